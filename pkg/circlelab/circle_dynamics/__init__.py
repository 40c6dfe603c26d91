from .lifts import *
from .translation import *
from .representation import *
from .euler_number import *
