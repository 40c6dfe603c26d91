from .moebius import *
from .polygon import *
from .mesh import *
from .horocircle import *
