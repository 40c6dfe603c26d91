from .circle_errors import *
from .group_errors import *
from .pipeline_errors import *
from .solver_errors import *
