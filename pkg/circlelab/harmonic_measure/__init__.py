from .rebin import *
from .field import *
from .solver import *
from .montecarlo import *
from .harnack import *
from .semiconjugacy import *
