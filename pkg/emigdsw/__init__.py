"""
    GDSW preconditioned cell-by-cell cardiac simulations
"""
__version__ = "0.1.0"
