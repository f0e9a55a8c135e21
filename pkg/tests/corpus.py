"""Shared test corpus: small solvable-by-finite groups with known structure.

Each entry records exact construction data plus hand-computed expectations
where we have them.  Integral entries (all generator entries in the ring of
integers, determinants units) feed the integral-only bound checks.
"""

from dataclasses import dataclass, field

from grouprank import Mat, NumberFieldSpec

QRAT = NumberFieldSpec.rationals()
GAUSS = NumberFieldSpec((1, 0, 1))       # Q(i)
GOLDEN = NumberFieldSpec((-1, -1, 1))    # Q(phi), phi^2 = phi + 1


@dataclass
class CorpusGroup:
    name: str
    spec: object
    gens: list
    integral: bool = False
    abelian: bool = False
    unipotent: bool = False
    diagonal_rational: bool = False
    expected_hirsch: object = None
    tags: tuple = field(default_factory=tuple)

    @property
    def n(self):
        return self.gens[0].n

    @property
    def nm(self):
        return self.n * self.spec.degree


def _mat(spec, rows):
    return Mat(spec, rows)


def _elem(spec, rows):
    """Rows whose entries are coefficient tuples over the field."""
    return Mat(spec, rows)


def _eij(spec, n, i, j, c=1):
    rows = [[spec.one if a == b else spec.zero for b in range(n)] for a in range(n)]
    rows[i][j] = spec.coerce(c)
    return Mat(spec, rows)


def _diag(spec, entries):
    n = len(entries)
    rows = [[spec.coerce(entries[i]) if i == j else spec.zero for j in range(n)]
            for i in range(n)]
    return Mat(spec, rows)


def _conjugate_all(gens, x):
    xi = x.inverse()
    return [xi * g * x for g in gens]


def build_corpus():
    Q = QRAT
    K = GAUSS
    G = GOLDEN
    i = K.alpha()
    phi = G.alpha()
    phibar = G.sub(G.one, phi)
    groups = []

    def add(name, spec, gens, **kw):
        groups.append(CorpusGroup(name, spec, gens, **kw))

    # rational unipotent
    add("ut2", Q, [_eij(Q, 2, 0, 1)], integral=True, abelian=True, unipotent=True,
        expected_hirsch=1)
    add("ut2-scaled", Q, [_eij(Q, 2, 0, 1, 2)], integral=True, abelian=True,
        unipotent=True, expected_hirsch=1)
    add("ut3-full", Q, [_eij(Q, 3, 0, 1), _eij(Q, 3, 1, 2)], integral=True,
        unipotent=True, expected_hirsch=3)
    add("ut3-abelian", Q, [_eij(Q, 3, 0, 1), _eij(Q, 3, 0, 2)], integral=True,
        abelian=True, unipotent=True, expected_hirsch=2)
    add("ut4-full", Q, [_eij(Q, 4, 0, 1), _eij(Q, 4, 1, 2), _eij(Q, 4, 2, 3)],
        integral=True, unipotent=True, expected_hirsch=6)
    add("ut4-pair", Q, [_eij(Q, 4, 0, 1), _eij(Q, 4, 2, 3)], integral=True,
        abelian=True, unipotent=True, expected_hirsch=2)
    add("ut4-line", Q, [_eij(Q, 4, 0, 1), _eij(Q, 4, 0, 2), _eij(Q, 4, 0, 3)],
        integral=True, abelian=True, unipotent=True, expected_hirsch=3)
    add("ut4-heis", Q, [_eij(Q, 4, 0, 1), _eij(Q, 4, 1, 2)], integral=True,
        unipotent=True, expected_hirsch=3)
    x3 = _mat(Q, [[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    add("ut3-conj", Q, _conjugate_all([_eij(Q, 3, 0, 1), _eij(Q, 3, 1, 2)], x3),
        integral=True, unipotent=True, expected_hirsch=3)

    # rational torsion / finite
    add("neg-i", Q, [_diag(Q, [-1, -1])], integral=True, abelian=True,
        diagonal_rational=True, expected_hirsch=0)
    add("rot4", Q, [_mat(Q, [[0, -1], [1, 0]])], integral=True, abelian=True,
        expected_hirsch=0)
    add("swap2", Q, [_mat(Q, [[0, 1], [1, 0]])], integral=True, abelian=True,
        expected_hirsch=0)
    add("perm3", Q, [_mat(Q, [[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
                     _mat(Q, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])],
        integral=True, expected_hirsch=0)
    add("diag-signs", Q, [_diag(Q, [-1, 1]), _diag(Q, [1, -1])], integral=True,
        abelian=True, diagonal_rational=True, expected_hirsch=0)
    add("rot-pair4", Q, [_mat(Q, [[0, -1, 0, 0], [1, 0, 0, 0],
                                  [0, 0, 1, 0], [0, 0, 0, 1]]),
                         _mat(Q, [[1, 0, 0, 0], [0, 1, 0, 0],
                                  [0, 0, 0, -1], [0, 0, 1, 0]])],
        integral=True, abelian=True, expected_hirsch=0)

    # rational mixed triangular
    add("tri-sign-u", Q, [_diag(Q, [-1, 1]), _eij(Q, 2, 0, 1)], integral=True,
        expected_hirsch=1)
    add("tri-signs4", Q, [_diag(Q, [1, -1, 1, -1]), _eij(Q, 4, 0, 1),
                          _eij(Q, 4, 2, 3)], integral=True, expected_hirsch=2)

    # golden-ratio field (integral units)
    add("golden-diag", G, [_diag(G, [phi, phibar])], integral=True, abelian=True,
        expected_hirsch=1)
    add("golden-diag-pair", G, [_diag(G, [phi, phibar]), _diag(G, [phibar, phi])],
        integral=True, abelian=True, expected_hirsch=1)
    add("golden-scalar", G, [_diag(G, [phi, phi])], integral=True, abelian=True,
        expected_hirsch=1)
    add("golden-mono", G, [_mat(G, [[G.zero, phibar], [phi, G.zero]])],
        integral=True, expected_hirsch=0)
    add("golden-swap-diag", G, [_mat(G, [[G.zero, G.one], [G.one, G.zero]]),
                                _diag(G, [phi, phibar])],
        integral=True, expected_hirsch=1)
    # conjugating I+E12 by diag(phi, phibar) sweeps out the whole rational
    # 2-dimensional module Q(phi)*E12, so the radical contributes 2
    add("golden-tri", G, [_diag(G, [phi, phibar]), _eij(G, 2, 0, 1)],
        integral=True, expected_hirsch=3)
    add("golden-u", G, [_eij(G, 2, 0, 1, phi)], integral=True, abelian=True,
        unipotent=True, expected_hirsch=1)
    add("golden-u2", G, [_eij(G, 2, 0, 1), _eij(G, 2, 0, 1, phi)], integral=True,
        abelian=True, unipotent=True, expected_hirsch=2)
    xg = _mat(G, [[G.one, phi], [G.zero, G.one]])
    add("golden-tri-conj", G, _conjugate_all([_diag(G, [phi, phibar]),
                                              _eij(G, 2, 0, 1)], xg),
        integral=True, expected_hirsch=3)

    # Gaussian field (integral)
    add("gauss-i", K, [_diag(K, [i, K.one])], integral=True, abelian=True,
        expected_hirsch=0)
    add("gauss-u-pair", K, [_eij(K, 2, 0, 1), _eij(K, 2, 0, 1, i)], integral=True,
        abelian=True, unipotent=True, expected_hirsch=2)
    add("gauss-mixed", K, [_diag(K, [i, K.one]), _eij(K, 2, 0, 1)], integral=True,
        expected_hirsch=2)
    add("gauss-mono", K, [_mat(K, [[K.zero, i], [K.one, K.zero]])], integral=True,
        expected_hirsch=0)
    add("gauss-u3", K, [_eij(K, 3, 0, 2, i), _eij(K, 3, 0, 1)], integral=True,
        abelian=True, unipotent=True, expected_hirsch=2)
    xk = _mat(K, [[K.one, i], [K.zero, K.one]])
    add("gauss-mixed-conj", K, _conjugate_all([_diag(K, [i, K.one]),
                                               _eij(K, 2, 0, 1)], xk),
        integral=True, expected_hirsch=2)

    # non-integral rational groups
    add("diag-2-half", Q, [_diag(Q, [2, "1/2"])], abelian=True,
        diagonal_rational=True, expected_hirsch=1)
    add("diag-23-32", Q, [_diag(Q, [2, 3]), _diag(Q, [3, 2])], abelian=True,
        diagonal_rational=True, expected_hirsch=2)
    add("diag-23-49", Q, [_diag(Q, [2, 3]), _diag(Q, [4, 9])], abelian=True,
        diagonal_rational=True, expected_hirsch=1)
    add("diag-smooth", Q, [_diag(Q, [6, 10]), _diag(Q, [15, 12])], abelian=True,
        diagonal_rational=True, expected_hirsch=2)
    add("diag-neg", Q, [_diag(Q, [-2, 3])], abelian=True,
        diagonal_rational=True, expected_hirsch=1)
    add("mono-2", Q, [_diag(Q, [2, "1/2"]), _mat(Q, [[0, -1], [1, 0]])],
        expected_hirsch=1)
    add("mixed-235", Q, [_diag(Q, [2, 3, 5]), _eij(Q, 3, 0, 1), _eij(Q, 3, 1, 2)],
        expected_hirsch=4)
    add("tri-2u", Q, [_diag(Q, [2, 1]), _eij(Q, 2, 0, 1)], expected_hirsch=2)

    return groups


def free_group_generators():
    Q = QRAT
    return [_mat(Q, [[1, 2], [0, 1]]), _mat(Q, [[1, 0], [2, 1]])]


def g6_template_fixture():
    """A fully specified instance of the 6 x 6 template: a = diag(1,2,3,1,1,1),
    b = [[x, y], [0, u]] with x = [[1,1],[0,1]], y nonzero, u = I in UT(4,Z),
    plus one more diagonal and two more unipotent generators.

    Hand computation: the diagonal image has multiplicative rank 2, and the
    radical's log Lie span is {E12, E26, E16, E13}, dimension 4, so the
    Hirsch number is 6.
    """
    Q = QRAT
    a = _diag(Q, [1, 2, 3, 1, 1, 1])
    b_rows = [[1, 1, 0, 0, 0, 0],
              [0, 1, 0, 0, 0, 1],
              [0, 0, 1, 0, 0, 0],
              [0, 0, 0, 1, 0, 0],
              [0, 0, 0, 0, 1, 0],
              [0, 0, 0, 0, 0, 1]]
    b = _mat(Q, b_rows)
    dd = _diag(Q, [1, 1, 1, 1, 1, 3])
    v1 = _eij(Q, 6, 0, 5)
    v2 = _eij(Q, 6, 0, 2)
    return [a, b, dd, v1, v2], 6


def tri_2u_pair():
    """G = <diag(2,1), I+E12> and its completely reducible part data."""
    Q = QRAT
    return [_diag(Q, [2, 1]), _eij(Q, 2, 0, 1)]
