from .errors import *
from .base_experiment import *
