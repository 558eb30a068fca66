from .states import *
from .operators import *
from .spectral import *
from .sampling import *
