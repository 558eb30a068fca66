from .meter import *
from .projection import *
