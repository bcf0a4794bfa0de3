"""Computer checks of sharp coefficient bounds for the bean-domain
bounded-turning class ``f'(z) < sqrt(1 + tanh z)``."""

__version__ = "0.1.0"
