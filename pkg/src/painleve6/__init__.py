"""Critical behaviour, movable poles and numerics for the sixth Painleve equation."""
from .errors import NumericalError, PainleveError, ValidationError
from .params import PviParameters, ThetaClass, coefficients_from_theta, theta_from_coefficients

__version__ = "0.1.0"
