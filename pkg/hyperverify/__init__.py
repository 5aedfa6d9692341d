from hyperverify.errors import *
from hyperverify.special_core import *
from hyperverify.hypergeometric import *
from hyperverify.appell import *
from hyperverify.quadrature import *
from hyperverify.transforms import *
from hyperverify.closed_forms import *
from hyperverify.identities import *
