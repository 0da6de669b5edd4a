"""
    Discrete harmonic extension of interface values into the subdomain interiors
"""
import numpy as np
import scipy.sparse as sp

from emigdsw.linalg import factorize


def _interior_free(operator, partition) -> list:
    """
        Free indices of each subdomain's interior DOFs
    """
    index = operator.free_index
    return [index[interior] for interior in partition.interior]


def harmonic_extend(operator, partition, gamma_values) -> sp.csc_matrix:
    """
        Extend interface values by solving K_II x_I = -K_IG x_G

        K has no coupling between interiors of different subdomains, so the
        solve splits into one block per subdomain. Only the columns that touch
        a subdomain's interface are solved for.

        Args:
            operator     - The CompositeOperator
            partition    - The DofPartition
            gamma_values - (n_free, m) values; rows off the interface are ignored

        Returns:
            The (n_free, m) extended vectors as a sparse matrix
    """
    K = operator.matrix.tocsr()
    gamma = operator.free_index[partition.gamma]
    values = sp.csr_matrix(gamma_values)
    n_free, n_columns = values.shape

    # Keep only the interface rows of the input
    keep = sp.diags(np.isin(np.arange(n_free), gamma).astype(float))
    boundary = (keep @ values).tocsr()
    boundary.eliminate_zeros()

    rows, cols, data = [], [], []
    for interior in _interior_free(operator, partition):
        if len(interior) == 0:
            continue
        rhs = (-(K[interior][:, gamma] @ boundary[gamma])).tocsc()
        rhs.eliminate_zeros()
        touched = np.flatnonzero(np.diff(rhs.indptr))
        if len(touched) == 0:
            continue

        block = factorize(K[interior][:, interior])
        solution = block.solve(rhs[:, touched].toarray()).reshape(len(interior), len(touched))

        local_rows, local_cols = np.nonzero(solution)
        rows.append(interior[local_rows])
        cols.append(touched[local_cols])
        data.append(solution[local_rows, local_cols])

    if rows:
        interior_part = sp.csr_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
            shape=(n_free, n_columns),
        )
        return (boundary + interior_part).tocsc()
    return boundary.tocsc()


def harmonic_residual(operator, partition, extended) -> float:
    """
        max over subdomains of ||K_II x_I + K_IG x_G||_inf / ||x_G||_inf

        Args:
            operator  - The CompositeOperator
            partition - The DofPartition
            extended  - Output of harmonic_extend

        Returns:
            The relative residual of the interior equations (0 for no columns)
    """
    K = operator.matrix.tocsr()
    extended = sp.csr_matrix(extended)
    gamma = operator.free_index[partition.gamma]
    scale = abs(extended[gamma]).max() if extended[gamma].nnz else 0.0
    if scale == 0:
        return 0.0

    worst = 0.0
    for interior in _interior_free(operator, partition):
        if len(interior) == 0:
            continue
        residual = K[interior] @ extended
        if residual.nnz:
            worst = max(worst, abs(residual).max())
    return worst / scale
