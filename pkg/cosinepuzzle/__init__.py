from . import errors
from . import cosine_map
from . import symbolic
from . import geometry
from . import coordinates
from . import rays
from . import basins
from . import render
from . import renorm_escape
from . import puzzle
from . import scan
from . import visualization
from . import export
from . import config
#
from .cosine_map import CosineMap
from .symbolic import Address
