"""Square matrices with entries in A^delta, stored as tuples of row tuples."""
from typing import Sequence, Tuple

import numpy as np

from app.models.algebra import AElem
from app.utils.errors import DeltaMismatch

AMatrix = Tuple[Tuple[AElem, ...], ...]


def freeze(rows: Sequence[Sequence[AElem]]) -> AMatrix:
    return tuple(tuple(row) for row in rows)


def delta_of(m: AMatrix) -> int:
    deltas = {x.delta for row in m for x in row}
    if len(deltas) != 1:
        raise DeltaMismatch(f"Matrix entries mix deltas {sorted(deltas)}")
    return deltas.pop()


def identity(delta: int, n: int = 3) -> AMatrix:
    return freeze([[AElem.one(delta) if i == j else AElem.zero(delta) for j in range(n)] for i in range(n)])


def zeros(delta: int, n: int = 3) -> AMatrix:
    return freeze([[AElem.zero(delta) for _ in range(n)] for _ in range(n)])


def add(m: AMatrix, n: AMatrix) -> AMatrix:
    return freeze([[x + y for x, y in zip(rm, rn)] for rm, rn in zip(m, n)])


def sub(m: AMatrix, n: AMatrix) -> AMatrix:
    return freeze([[x - y for x, y in zip(rm, rn)] for rm, rn in zip(m, n)])


def scale(c, m: AMatrix) -> AMatrix:
    return freeze([[c * x for x in row] for row in m])


def matmul(m: AMatrix, n: AMatrix) -> AMatrix:
    size, inner, cols = len(m), len(n), len(n[0])
    out = []
    for i in range(size):
        row = []
        for j in range(cols):
            acc = m[i][0] * n[0][j]
            for k in range(1, inner):
                acc = acc + m[i][k] * n[k][j]
            row.append(acc)
        out.append(row)
    return freeze(out)


def commutator(m: AMatrix, n: AMatrix) -> AMatrix:
    return sub(matmul(m, n), matmul(n, m))


def transpose(m: AMatrix) -> AMatrix:
    return freeze([[m[j][i] for j in range(len(m))] for i in range(len(m[0]))])


def conj(m: AMatrix) -> AMatrix:
    return freeze([[x.conj() for x in row] for row in m])


def conj_transpose(m: AMatrix) -> AMatrix:
    return transpose(conj(m))


def trace(m: AMatrix) -> AElem:
    acc = m[0][0]
    for i in range(1, len(m)):
        acc = acc + m[i][i]
    return acc


def det3(m: AMatrix) -> AElem:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def adjugate3(m: AMatrix) -> AMatrix:
    def minor(i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        return m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]

    cof = [[minor(i, j) if (i + j) % 2 == 0 else -minor(i, j) for j in range(3)] for i in range(3)]
    return transpose(freeze(cof))


def inverse3(m: AMatrix) -> AMatrix:
    """Inverse through the adjugate; raises NotInvertible when det is a zero divisor."""
    inv_det = det3(m).inverse()
    return scale(inv_det, adjugate3(m))


def equals(m: AMatrix, n: AMatrix) -> bool:
    return all(x.equals(y) for rm, rn in zip(m, n) for x, y in zip(rm, rn))


def is_zero(m: AMatrix) -> bool:
    return all(x.is_zero() for row in m for x in row)


def to_numeric(m: AMatrix) -> AMatrix:
    return freeze([[x.to_numeric() for x in row] for row in m])


def to_blocks(m: AMatrix) -> np.ndarray:
    """Real-representation embedding: each entry becomes [[a, delta*b], [b, a]]."""
    n = len(m)
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            x = x.to_numeric()
            out[2 * i:2 * i + 2, 2 * j:2 * j + 2] = [[x.a, x.delta * x.b], [x.b, x.a]]
    return out


def from_blocks(blocks: np.ndarray, delta: int) -> AMatrix:
    n = blocks.shape[0] // 2
    return freeze(
        [[AElem(complex(blocks[2 * i, 2 * j]), complex(blocks[2 * i + 1, 2 * j]), delta) for j in range(n)] for i in range(n)]
    )
