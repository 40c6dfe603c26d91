from .matsumoto import *
from .report import *
