from .nonfactorable import *
