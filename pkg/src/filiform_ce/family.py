"""The graded filiform algebras and their one-dimensional central extensions.

``build_mu(n)`` returns the (n+1)-dimensional graded filiform Lie algebra
with the single nonzero product family [e_i, e_0] = e_{i+1}.  Appending a
central direction e_n and letting the brackets [e_i, e_j] (i, j < n) pick up
e_n-components subject to the Leibniz identity yields a family of
non-Lie Leibniz algebras.  ``solve_leibniz_constraints`` derives, by plain
linear algebra on the identity's residual, which e_n-components are free;
``ExtensionParams`` holds exactly those free coordinates and
``build_table`` expands them into a full structure tensor.

Parameter naming: ``bIJ`` is the e_n-coefficient of [e_I, e_J].  After
reduction the free ones are b00, b01, b11, the even-index row
b12, b14, ... b1{n-2}, and (odd n only) one top coefficient ``b`` with
[e_i, e_{n-i}] = (-1)^i * b * e_n.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, FiliformError
from .subsets import PARAM_SLOTS, SUBSETS, get_spec
from .tensor import StructureTensor, leibniz_residual_tensor
from .tolerance import RANK_RTOL, require_finite

N_RANGE = range(4, 9)


def build_mu(n: int) -> StructureTensor:
    """Structure tensor of the graded filiform Lie algebra of dimension n+1.

    Basis e_0..e_n; the only nonzero products are [e_i, e_0] = e_{i+1}
    for 1 <= i <= n-1.
    """
    if n < 2:
        raise DomainError(f"graded filiform algebra needs n >= 2, got {n}")
    d = n + 1
    gamma = np.zeros((d, d, d), dtype=complex)
    for i in range(1, n):
        gamma[i, 0, i + 1] = 1.0
    return StructureTensor(gamma)


# ---------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class ExtensionParams:
    """Free coordinates of a central extension of ``build_mu(n)``.

    ``b_even`` lists b12, b14, ... (length (n-2)//2); ``b`` is the top
    coefficient, present only for odd n (forced to exactly 0 otherwise).
    """

    n: int
    b00: complex
    b01: complex
    b11: complex
    b_even: tuple[complex, ...]
    b: complex = 0

    def __post_init__(self):
        if self.n not in N_RANGE:
            raise DomainError(f"n must be one of {list(N_RANGE)}, got {self.n}")
        want = (self.n - 2) // 2
        if len(self.b_even) != want:
            raise DomainError(
                f"b_even must have length {want} for n={self.n}, got {len(self.b_even)}"
            )
        object.__setattr__(self, "b_even", tuple(complex(v) for v in self.b_even))
        for name in ("b00", "b01", "b11", "b"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        require_finite(
            np.array([self.b00, self.b01, self.b11, *self.b_even, self.b]),
            "extension parameters",
        )
        if self.n % 2 == 0 and self.b != 0:
            raise DomainError(f"b must be 0 for even n, got {self.b!r}")

    @property
    def b12(self) -> complex:
        return self.b_even[0]

    @property
    def b14(self) -> complex:
        return self.b_even[1] if len(self.b_even) > 1 else 0j

    @property
    def b16(self) -> complex:
        return self.b_even[2] if len(self.b_even) > 2 else 0j

    def as_tuple(self) -> tuple[complex, ...]:
        """(b00, b01, b11, *b_even) plus a trailing b for odd n."""
        out = (self.b00, self.b01, self.b11) + self.b_even
        if self.n % 2 == 1:
            out = out + (self.b,)
        return out

    def slot(self, name: str) -> complex:
        return {
            "b00": self.b00,
            "b01": self.b01,
            "b11": self.b11,
            "b12": self.b12,
            "b14": self.b14,
            "b16": self.b16,
            "b": self.b,
        }[name]

    @property
    def delta(self) -> complex:
        """Discriminant b01^2 - 4*b00*b11 of the leading 2x2 block."""
        return self.b01 * self.b01 - 4 * self.b00 * self.b11

    def scale(self) -> float:
        m = max(abs(v) for v in self.as_tuple())
        return m if m > 0 else 1.0


def params_from_tuple(n: int, values) -> ExtensionParams:
    """Inverse of :meth:`ExtensionParams.as_tuple`."""
    values = tuple(complex(v) for v in values)
    want = len(PARAM_SLOTS[n]) if n in PARAM_SLOTS else -1
    if len(values) != want:
        raise DomainError(
            f"expected {want} parameters for n={n}, got {len(values)}"
        )
    b00, b01, b11 = values[:3]
    if n % 2 == 1:
        return ExtensionParams(n, b00, b01, b11, values[3:-1], values[-1])
    return ExtensionParams(n, b00, b01, b11, values[3:], 0)


# ---------------------------------------------------------------------------
# constraint solver

_GENERIC_LABELS = ("b00", "b01", "b11")


def _unknown_labels(n: int) -> list[str]:
    labels = list(_GENERIC_LABELS)
    for i in range(1, n - 1):
        for j in range(i + 1, n):
            labels.append(f"b{i}{j}")
    return labels


def _direction(n: int, label: str) -> np.ndarray:
    """Unit tensor direction for one unknown e_n-coefficient."""
    d = n + 1
    g = np.zeros((d, d, d))
    if label == "b00":
        g[0, 0, n] = 1.0
    elif label == "b01":
        g[0, 1, n] = 1.0
    elif label == "b11":
        g[1, 1, n] = 1.0
    else:
        i, j = int(label[1]), int(label[2:])
        g[i, j, n] = 1.0
        g[j, i, n] = -1.0
    return g


def _skeleton(n: int) -> np.ndarray:
    d = n + 1
    g = np.zeros((d, d, d))
    for i in range(1, n):
        g[i, 0, i + 1] = 1.0
        g[0, i, i + 1] = -1.0
    return g


@dataclass(frozen=True)
class Relation:
    """One derived equality: target = sum of coeff * source terms.

    Empty ``terms`` means the coefficient is forced to vanish.
    """

    target: str
    terms: tuple[tuple[str, float], ...]


@dataclass(frozen=True)
class ConstraintReport:
    n: int
    total_unknowns: int
    rank: int
    free_count: int
    free_labels: tuple[str, ...]
    free_basis: tuple[dict, ...] = field(repr=False)
    implied_relations: tuple[Relation, ...] = field(repr=False)
    #: row sign s(i): gamma[i, j, n] = s(i) * b_{1, i+j-1} off the top chain
    sign: dict = field(repr=False, default_factory=dict)


def _expected_free_labels(n: int) -> list[str]:
    labels = list(_GENERIC_LABELS)
    labels += [f"b1{m}" for m in range(2, n - 1, 2)]
    if n % 2 == 1:
        labels.append(f"b1{n - 1}")
    return labels


@functools.lru_cache(maxsize=None)
def solve_leibniz_constraints(n: int) -> ConstraintReport:
    """Reduce the e_n-coefficients of a central extension by the Leibniz identity.

    The residual of the identity is affine in the unknown coefficients
    (they only feed the central direction), so the admissible set is the
    null space of a single matrix whose columns are the residual tensors of
    the individual coefficient directions.  Free coordinates, forced zeros
    and proportionality relations are read off that null space.
    """
    if not 4 <= n <= 9:
        raise DomainError(f"constraint solver supports 4 <= n <= 9, got {n}")
    labels = _unknown_labels(n)
    t0 = _skeleton(n)
    r0 = leibniz_residual_tensor(StructureTensor(t0.astype(complex)))
    if np.max(np.abs(r0)) > 1e-12:
        raise FiliformError("graded filiform skeleton fails the Leibniz identity")

    cols = []
    for lab in labels:
        r = leibniz_residual_tensor(StructureTensor((t0 + _direction(n, lab)).astype(complex)))
        cols.append(np.real(r).reshape(-1))
    a = np.column_stack(cols)

    _, s, vh = np.linalg.svd(a, full_matrices=True)
    tol = RANK_RTOL * (s[0] if s.size else 1.0)
    rank = int(np.sum(s > tol))
    null_rows = vh[rank:, :]
    free_count = len(labels) - rank

    free_labels = _expected_free_labels(n)
    if n in N_RANGE and free_count != len(free_labels):
        raise FiliformError(
            f"n={n}: expected {len(free_labels)} free coefficients, solver found {free_count}"
        )
    free_idx = [labels.index(lab) for lab in free_labels]
    dep_idx = [k for k in range(len(labels)) if k not in free_idx]

    nmat = null_rows.T  # (unknowns, free_count)
    n_free = nmat[free_idx, :]
    if abs(np.linalg.det(n_free)) < 1e-10:
        raise FiliformError(
            f"n={n}: chosen free coordinates do not parameterize the null space"
        )
    coeff = nmat[dep_idx, :] @ np.linalg.inv(n_free)
    coeff[np.abs(coeff) < 1e-9] = 0.0

    relations = []
    for row, k in enumerate(dep_idx):
        terms = []
        for col, src in enumerate(free_labels):
            c = coeff[row, col]
            if c != 0.0:
                c = round(c) if abs(c - round(c)) < 1e-9 else c
                terms.append((src, float(c)))
        relations.append(Relation(labels[k], tuple(terms)))

    basis = []
    for col, src in enumerate(free_labels):
        vec = {src: 1.0}
        for row, k in enumerate(dep_idx):
            c = coeff[row, col]
            if c != 0.0:
                vec[labels[k]] = float(c)
        basis.append(vec)

    sign = _extract_signs(n, relations)
    return ConstraintReport(
        n=n,
        total_unknowns=len(labels),
        rank=rank,
        free_count=free_count,
        free_labels=tuple(free_labels),
        free_basis=tuple(basis),
        implied_relations=tuple(relations),
        sign=sign,
    )


def _extract_signs(n: int, relations) -> dict:
    """Row signs s(i) with gamma[i, j, n] = s(i) * b_{1, i+j-1} (i+j != n).

    s(1) = 1 by the free-coordinate convention.  For i >= 2 the sign is read
    off any relation b_{i,j} = c * b_{1,i+j-1} whose right side is a free
    even coefficient; rows admitting no such relation only ever multiply
    forced-zero coefficients, and get the conventional value +1.
    """
    rel_map = {r.target: r.terms for r in relations}
    sign = {1: 1}
    for i in range(2, n - 1):
        found = None
        for j in range(i + 1, n):
            m = i + j - 1
            if i + j == n or m % 2 == 1 or m > n - 2:
                continue
            terms = rel_map.get(f"b{i}{j}", None)
            if terms is None:
                continue
            if len(terms) != 1 or terms[0][0] != f"b1{m}":
                raise FiliformError(
                    f"n={n}: unexpected relation shape for b{i}{j}: {terms}"
                )
            c = terms[0][1]
            if abs(abs(c) - 1.0) > 1e-9:
                raise FiliformError(f"n={n}: non-unit relation coefficient for b{i}{j}")
            c = int(round(c))
            if found is None:
                found = c
            elif found != c:
                raise FiliformError(f"n={n}: inconsistent sign for row {i}")
        sign[i] = found if found is not None else 1
    return sign


# ---------------------------------------------------------------------------
# table builder


def build_table(p: ExtensionParams, sign_table=None) -> StructureTensor:
    """Full structure tensor of the central extension described by ``p``.

    The last basis vector e_n is central; brackets of the underlying algebra
    acquire e_n-components determined by the free coordinates through the
    solver's proportionality relations.  ``sign_table`` overrides row signs
    s(i) for the rows it lists (testing hook; unlisted rows keep the
    solver's own values).
    """
    n = p.n
    solved = solve_leibniz_constraints(n).sign
    sign_table = solved if sign_table is None else {**solved, **sign_table}
    d = n + 1
    gamma = _skeleton(n).astype(complex)
    gamma[0, 0, n] = p.b00
    gamma[0, 1, n] += p.b01
    gamma[1, 1, n] = p.b11

    def b_row1(m: int) -> complex:
        # b_{1,m}: nonzero only for even m <= n-2
        if m % 2 == 0 and 2 <= m <= n - 2:
            return p.b_even[m // 2 - 1]
        return 0j

    for i in range(1, n - 1):
        for j in range(i + 1, n):
            if i + j == n:
                continue
            v = sign_table[i] * b_row1(i + j - 1)
            if v != 0:
                gamma[i, j, n] = v
                gamma[j, i, n] = -v
    if n % 2 == 1:
        for i in range(1, n):
            if n - i <= i:
                break
            v = (-1) ** i * p.b
            gamma[i, n - i, n] = v
            gamma[n - i, i, n] = -v
    return StructureTensor(gamma)


# ---------------------------------------------------------------------------
# random sampling

#: resampling margin for quantities that classification routines divide by
_MARGIN = 0.05


def _rand_nonzero(rng) -> complex:
    """Magnitude in [0.5, 2], random sign."""
    return complex(rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0]))


def random_params(
    n: int,
    subset: str | None = None,
    seed: int | None = 0,
    rng=None,
) -> ExtensionParams:
    """Draw parameters, optionally exactly inside one classification cell.

    Slots the cell requires to vanish are set to exact zeros; slots it
    requires nonzero (and unconstrained ones) get magnitudes in [0.5, 2].
    Equalities like delta = 0 hold exactly by construction.  Samples are
    redrawn while any quantity the downstream normal-form routines divide
    by sits within ``0.05`` of zero, so golden-path classification never
    grazes a removable singularity.
    """
    if n not in N_RANGE:
        raise DomainError(f"n must be one of {list(N_RANGE)}, got {n}")
    if rng is None:
        rng = np.random.default_rng(seed)
    spec = get_spec(n, subset) if subset is not None else None
    conditions = dict(spec.conditions) if spec is not None else {}
    for name, nonzero in conditions.items():
        if name != "delta" and name not in PARAM_SLOTS[n]:
            raise DomainError(f"subset {subset!r} not defined for n={n}")

    for _ in range(200):
        values = {}
        for slot in PARAM_SLOTS[n]:
            want = conditions.get(slot, None)
            if want is False:
                values[slot] = 0j
            else:
                values[slot] = _rand_nonzero(rng)
        want_delta = conditions.get("delta", None)
        if want_delta is False:
            # all delta = 0 cells require b11 != 0
            values["b00"] = values["b01"] ** 2 / (4 * values["b11"])
        p = params_from_tuple(n, [values[s] for s in PARAM_SLOTS[n]])
        if want_delta is True and abs(p.delta) < 2 * _MARGIN:
            continue
        if not _clears_margins(p):
            continue
        return p
    raise FiliformError("random_params failed to clear sampling margins")


def _clears_margins(p: ExtensionParams) -> bool:
    if p.n % 2 == 1 and p.b != 0:
        if p.b11 != 0 and abs(2 * p.b11 - p.b01 * p.b) < _MARGIN:
            return False
        if p.b11 == 0 and p.b01 != 0 and abs(p.b01 - p.b00 * p.b) < _MARGIN:
            return False
    if p.n == 8 and p.b16 == 0 and p.b14 != 0 and p.b11 != 0:
        # the orbit function on this cell divides by delta
        if abs(p.delta) < _MARGIN:
            return False
    return True


def all_subset_names(n: int) -> list[str]:
    return [s.name for s in SUBSETS[n]]
