from .integrate import *
from .holonomy import *
from .report import *
