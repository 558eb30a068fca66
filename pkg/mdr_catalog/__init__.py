from .relations import *
from .distances import *
