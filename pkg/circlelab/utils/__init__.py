"""
The `utils` package. Includes the check ledger, status lines and loading files
"""


from .eventlog import CheckEvent, CheckLog
from .json_loader import JsonLoader
from .status import announce, progress_every
