from .chart import *
from .slopes import *
from .curvature import *
