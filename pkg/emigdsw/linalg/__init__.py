"""
    Factorizations, PCG and condition number estimation
"""
from emigdsw.linalg.factor import (DenseCholesky, Factorization,
                                   SparseFactorization, as_sparse_sym,
                                   factorize, factorize_dense)
from emigdsw.linalg.krylov import SolveStats, pcg
from emigdsw.linalg.spectrum import (dense_condition, dense_spectrum,
                                     lanczos_condition, lanczos_tridiagonal)
