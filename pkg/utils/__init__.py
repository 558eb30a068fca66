from .util import *
from .tracker import *
from .parallel import *
