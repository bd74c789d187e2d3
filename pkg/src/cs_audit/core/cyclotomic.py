"""
Exact arithmetic in the ring Z[w], w a primitive N-th root of unity (N prime).

An element is a tuple of N integers (a_0, ..., a_{N-1}) meaning sum a_i w^i.
Since 1 + w + ... + w^{N-1} = 0 the representation is reduced by subtracting
a_{N-1} from every coefficient, so the last coefficient of a canonical element
is always 0 and an element is zero iff all coefficients are zero.
"""
from dataclasses import dataclass
from math import gcd
from typing import List, Sequence, Tuple

Element = Tuple[int, ...]

COLUMN_KINDS = ('fourier', 'constant', 'cosine', 'sine')


def canonical(coeffs: Sequence[int]) -> Element:
    """Reduce a length-N coefficient vector modulo the cyclotomic polynomial."""
    top = coeffs[-1]
    if top == 0:
        return tuple(coeffs)
    return tuple(c - top for c in coeffs)


def monomial(power: int, modulus: int) -> Element:
    """w^power."""
    coeffs = [0] * modulus
    coeffs[power % modulus] = 1
    return canonical(coeffs)


def add(a: Element, b: Element) -> Element:
    return canonical([x + y for x, y in zip(a, b)])


def sub(a: Element, b: Element) -> Element:
    return canonical([x - y for x, y in zip(a, b)])


def mul(a: Element, b: Element) -> Element:
    """Cyclic convolution (w^N = 1) followed by reduction."""
    n = len(a)
    out = [0] * n
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[(i + j) % n] += ai * bj
    return canonical(out)


def is_zero(a: Element) -> bool:
    return not any(a)


def content(elements: Sequence[Element]) -> int:
    """gcd of every integer coefficient of the given elements (0 if all vanish)."""
    g = 0
    for e in elements:
        for c in e:
            if c:
                g = gcd(g, c)
                if g == 1:
                    return 1
    return g


def evaluate_mod(a: Element, root: int, prime: int) -> int:
    """Image of a under w -> root in GF(prime)."""
    acc = 0
    for c in reversed(a):
        acc = (acc * root + c) % prime
    return acc


@dataclass(frozen=True)
class CyclotomicFrame:
    """
    Symbolic description of a matrix whose rescaled entries lie in Z[w].

    Rows are frequencies t. Columns are (kind, index) pairs:
    'fourier' x -> w^{t x}; 'constant' -> 1; 'cosine' i -> w^{ti} + w^{-ti};
    'sine' i -> w^{ti} - w^{-ti}. Each kind is a nonzero rescaling of the
    corresponding floating-point column, so ranks of column subsets agree.
    """

    modulus: int
    rows: Tuple[int, ...]
    columns: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        for kind, _ in self.columns:
            if kind not in COLUMN_KINDS:
                raise ValueError(f"Unknown column kind {kind!r}")

    @classmethod
    def partial_dft(cls, modulus: int, rows: Sequence[int]) -> "CyclotomicFrame":
        return cls(modulus, tuple(rows), tuple(('fourier', x) for x in range(modulus)))

    @classmethod
    def realified(cls, modulus: int, rows: Sequence[int]) -> "CyclotomicFrame":
        k = (modulus - 1) // 2
        columns = [('constant', 0)]
        columns += [('cosine', i) for i in range(1, k + 1)]
        columns += [('sine', i) for i in range(1, k + 1)]
        return cls(modulus, tuple(rows), tuple(columns))

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.columns)

    def select_columns(self, indices: Sequence[int]) -> "CyclotomicFrame":
        return CyclotomicFrame(self.modulus, self.rows, tuple(self.columns[i] for i in indices))

    def entry(self, t: int, column: Tuple[str, int]) -> Element:
        kind, idx = column
        n = self.modulus
        if kind == 'fourier':
            return monomial(t * idx, n)
        if kind == 'constant':
            return monomial(0, n)
        plus = monomial(t * idx, n)
        minus = monomial(-t * idx, n)
        return add(plus, minus) if kind == 'cosine' else sub(plus, minus)

    def entries(self) -> List[List[Element]]:
        """Row-major element grid."""
        return [[self.entry(t, col) for col in self.columns] for t in self.rows]
