from .scenario import *
from .gamma import *
from .theorem import *
from .chsh import *
from .max_search import *
