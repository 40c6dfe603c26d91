from .config import *
from .artifacts import *
from .export import *
from .pipeline import *
