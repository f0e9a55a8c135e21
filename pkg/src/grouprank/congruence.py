"""Congruence reduction: prime selection, finite images, presentations, kernels.

The reduction maps matrix entries coefficient-wise into F_p(beta) where beta
is a root of the chosen irreducible factor of the field polynomial mod p.
The finite image is enumerated breadth-first, presented by its Schreier
relators, and the relators are evaluated exactly over the ground field to
produce normal generators of the congruence kernel.
"""

import sympy

from .errors import GroupRankError, ImageBudgetExceeded
from .numberfield import FiniteField, factor_mod_p, balanced_residues
from .matrix import Mat

DEFAULT_BUDGET = 200_000
PRIME_FLOOR = 5


# -------------------- words --------------------

def word_inverse(word):
    return tuple((g, -e) for g, e in reversed(word))


def free_reduce(word):
    out = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def cyclic_canonical(word):
    """Canonical representative under free reduction and rotation."""
    w = free_reduce(word)
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = free_reduce(w[1:-1])
    if not w:
        return ()
    return min(w[i:] + w[:i] for i in range(len(w)))


def evaluate_word(word, mats):
    """Exact left-to-right product of the assigned matrices and inverses."""
    if not mats:
        raise GroupRankError("empty assignment")
    ring = mats[0].ring
    n = mats[0].n
    out = Mat.identity(ring, n)
    inv_cache = {}
    for g, e in word:
        if not 0 <= g < len(mats):
            raise GroupRankError("word references generator %d of %d" % (g, len(mats)))
        if e == 1:
            out = out * mats[g]
        else:
            if g not in inv_cache:
                inv_cache[g] = mats[g].inverse()
            out = out * inv_cache[g]
    return out


def substitute_word(word, definitions):
    """Replace generators that carry defining words by those words."""
    out = []
    for g, e in word:
        if g in definitions:
            d = definitions[g]
            out.extend(d if e == 1 else word_inverse(d))
        else:
            out.append((g, e))
    return free_reduce(tuple(out))


# -------------------- prime selection --------------------

def _prime_factors(n):
    n = abs(int(n))
    if n <= 1:
        return set()
    return set(sympy.factorint(n).keys())


def denominator_primes(gens, spec):
    """Primes dividing any coefficient denominator in S or S^{-1}."""
    primes = set()
    for g in gens:
        for h in (g, g.inverse()):
            for row in h.rows:
                for entry in row:
                    for c in entry:
                        primes |= _prime_factors(c.denominator)
    return frozenset(primes)


class CongruenceSite:
    """A reduction site: the odd prime p and the residue field F_p(beta)."""

    def __init__(self, p, spec, denom_primes):
        self.p = int(p)
        self.spec = spec
        self.denominator_primes = frozenset(denom_primes)
        factors = factor_mod_p(spec.minpoly, self.p)
        self.factor = min(factors, key=lambda f: (len(f), balanced_residues(f, self.p)))
        self.ff = FiniteField(self.p, self.factor)
        beta = self.ff.beta()
        pows = [self.ff.one]
        for _ in range(spec.degree - 1):
            pows.append(self.ff.mul(pows[-1], beta))
        self._beta_powers = tuple(pows)

    def reduce_element(self, e):
        ff = self.ff
        out = ff.zero
        for c, bp in zip(e, self._beta_powers):
            if c:
                out = ff.add(out, ff.mul(ff.from_fraction(c), bp))
        return out

    def reduce_mat(self, mat):
        return Mat(self.ff, [[self.reduce_element(x) for x in row] for row in mat.rows])

    def __repr__(self):
        return "CongruenceSite(p=%d, g=%s)" % (self.p, (self.factor,))


def _violation(p, disc, denom):
    if p < PRIME_FLOOR or not sympy.isprime(p):
        return "p must be a prime >= %d" % PRIME_FLOOR
    if disc % p == 0:
        return "p divides the discriminant of the field polynomial"
    if p in denom:
        return "p divides a denominator of an entry of S or S^{-1}"
    return None


def select_prime(gens, spec, prime=None):
    """Choose the congruence prime and residue field for a generating set.

    Deterministic: the smallest prime >= 5 not dividing the field
    discriminant nor any entry denominator of S and S^{-1}; a caller-supplied
    prime is validated against the same conditions and otherwise rejected.
    """
    for g in gens:
        if g.ring is not spec and g.ring != spec:
            raise GroupRankError("generators are not over the given field")
        if spec.is_zero(g.det()):
            raise GroupRankError("generator is singular")
    denom = denominator_primes(gens, spec)
    disc = spec.discriminant if spec.discriminant != 0 else 1
    if prime is not None:
        reason = _violation(int(prime), disc, denom)
        if reason:
            raise GroupRankError("invalid prime %d: %s" % (prime, reason))
        return CongruenceSite(prime, spec, denom)
    p = PRIME_FLOOR
    while True:
        if sympy.isprime(p) and _violation(p, disc, denom) is None:
            return CongruenceSite(p, spec, denom)
        p = int(sympy.nextprime(p))


def valid_primes(gens, spec, count):
    """The first ``count`` primes acceptable to select_prime, ascending."""
    denom = denominator_primes(gens, spec)
    disc = spec.discriminant if spec.discriminant != 0 else 1
    out = []
    p = PRIME_FLOOR
    while len(out) < count:
        if sympy.isprime(p) and _violation(p, disc, denom) is None:
            out.append(p)
        p = int(sympy.nextprime(p))
    return out


def reduce_matrix(mat, site):
    """Entry-wise reduction; rejects entries whose denominator p divides."""
    try:
        return site.reduce_mat(mat)
    except ZeroDivisionError as exc:
        raise GroupRankError("matrix has a denominator divisible by p=%d" % site.p) from exc


# -------------------- finite image enumeration --------------------

def _pack(mat, ff):
    if ff.deg == 1:
        return tuple(x[0] for row in mat.rows for x in row)
    return tuple(x for row in mat.rows for x in row)


def _unpack(flat, ff, n):
    if ff.deg == 1:
        rows = [[(flat[i * n + j],) for j in range(n)] for i in range(n)]
    else:
        rows = [[flat[i * n + j] for j in range(n)] for i in range(n)]
    return Mat(ff, rows)


def _make_mul(ff, n):
    if ff.deg == 1:
        p = ff.p
        rng = range(n)

        def mul(a, b):
            out = []
            for i in rng:
                ai = a[i * n:(i + 1) * n]
                for j in rng:
                    out.append(sum(ai[k] * b[k * n + j] for k in rng) % p)
            return tuple(out)

        return mul

    fadd, fmul, zero = ff.add, ff.mul, ff.zero

    def mul(a, b):
        out = []
        for i in range(n):
            for j in range(n):
                acc = zero
                for k in range(n):
                    x = a[i * n + k]
                    if any(x):
                        acc = fadd(acc, fmul(x, b[k * n + j]))
                out.append(acc)
        return tuple(out)

    return mul


class FiniteImage:
    """BFS closure of the generator images, with Cayley table and spanning tree.

    Element 0 is the identity; discovery order is the canonical ordering.
    ``tree[v]`` holds the (parent, generator) edge that discovered v, giving
    each element a canonical word in the generators.
    """

    def __init__(self, ff, n, gens_ff, elements, index, cayley, tree):
        self.ff = ff
        self.n = n
        self.gens_ff = gens_ff
        self._elements = elements
        self._index = index
        self.cayley = cayley
        self.tree = tree
        self._words = {0: ()}

    @property
    def order(self):
        return len(self._elements)

    def element_mat(self, idx):
        return _unpack(self._elements[idx], self.ff, self.n)

    @property
    def elements(self):
        return [self.element_mat(i) for i in range(self.order)]

    def index_of(self, mat):
        return self._index.get(_pack(mat, self.ff))

    def word_for(self, idx):
        w = self._words.get(idx)
        if w is not None:
            return w
        path = []
        cur = idx
        while cur not in self._words:
            parent, gi = self.tree[cur]
            path.append((cur, gi))
            cur = parent
        w = self._words[cur]
        for cur2, gi in reversed(path):
            w = w + ((gi, 1),)
            self._words[cur2] = w
        return self._words[idx]

    def verify_closure(self):
        """Exact re-check of the Cayley table; used by certificate mode."""
        mul = _make_mul(self.ff, self.n)
        packed_gens = [_pack(g, self.ff) for g in self.gens_ff]
        for u in range(self.order):
            for gi, g in enumerate(packed_gens):
                v = self.cayley[u][gi]
                if mul(self._elements[u], g) != self._elements[v]:
                    return False
        return True


def enumerate_image(gens_ff, budget=DEFAULT_BUDGET):
    """Breadth-first closure of invertible generator images over F_p(beta)."""
    if not gens_ff:
        raise GroupRankError("no generators")
    ff = gens_ff[0].ring
    n = gens_ff[0].n
    for g in gens_ff:
        if ff.is_zero(g.det()):
            raise GroupRankError("generator image is singular")
    mul = _make_mul(ff, n)
    packed_gens = [_pack(g, ff) for g in gens_ff]
    ident = _pack(Mat.identity(ff, n), ff)
    elements = [ident]
    index = {ident: 0}
    cayley = []
    tree = [None]
    u = 0
    while u < len(elements):
        row = []
        base = elements[u]
        for gi, g in enumerate(packed_gens):
            prod = mul(base, g)
            v = index.get(prod)
            if v is None:
                if len(elements) >= budget:
                    raise ImageBudgetExceeded(len(elements), budget)
                v = len(elements)
                index[prod] = v
                elements.append(prod)
                tree.append((u, gi))
            row.append(v)
        cayley.append(row)
        u += 1
    return FiniteImage(ff, n, gens_ff, elements, index, cayley, tree)


# -------------------- presentations --------------------

class Presentation:
    """Relators (words over the generators) presenting a group.

    ``definitions`` optionally maps an auxiliary generator index to its
    defining word over the base generators, so relators mentioning auxiliary
    generators can be evaluated at lifts of the base generators alone.
    """

    def __init__(self, ngens, relators, definitions=None, edges=None):
        self.ngens = ngens
        self.relators = tuple(relators)
        self.definitions = dict(definitions or {})
        self._edges = edges

    def relators_in_base(self):
        if not self.definitions:
            return self.relators
        subbed = []
        for w in self.relators:
            subbed.append(substitute_word(w, self.definitions))
        return tuple(subbed)

    def verify(self, mats):
        """Exact check that every relator evaluates to the identity."""
        for w in self.relators_in_base():
            if w and not evaluate_word(w, mats).is_identity():
                return False
        return True

    def __repr__(self):
        return "Presentation(%d gens, %d relators)" % (self.ngens, len(self.relators))


def schreier_presentation(img):
    """One relator per non-tree Cayley edge, deduplicated by free reduction
    and canonical rotation of cyclic words."""
    seen = {}
    k = len(img.gens_ff)
    for u in range(img.order):
        for gi in range(k):
            v = img.cayley[u][gi]
            if img.tree[v] == (u, gi):
                continue
            w = free_reduce(img.word_for(u) + ((gi, 1),) + word_inverse(img.word_for(v)))
            if not w:
                continue
            key = cyclic_canonical(w)
            if key and key not in seen:
                seen[key] = (u, gi, v)
    return Presentation(k, tuple(seen.keys()), edges=tuple(seen.values()))


def kernel_normal_generators(gens, pres, img=None):
    """Evaluate the relators at the exact generators; the non-identity values
    normally generate the congruence kernel.

    With the finite image available the evaluation reuses cached spanning-tree
    words, one matrix product per new tree node.
    """
    if not gens:
        return []
    out = []
    seen = set()
    if img is not None and pres._edges is not None:
        tmat = {0: Mat.identity(gens[0].ring, gens[0].n)}
        tinv = {}

        def tree_mat(idx):
            if idx in tmat:
                return tmat[idx]
            stack = []
            cur = idx
            while cur not in tmat:
                stack.append(cur)
                cur = img.tree[cur][0]
            for node in reversed(stack):
                parent, gi = img.tree[node]
                tmat[node] = tmat[parent] * gens[gi]
            return tmat[idx]

        def tree_inv(idx):
            if idx not in tinv:
                tinv[idx] = tree_mat(idx).inverse()
            return tinv[idx]

        for (u, gi, v) in pres._edges:
            val = tree_mat(u) * gens[gi] * tree_inv(v)
            if not val.is_identity() and val not in seen:
                seen.add(val)
                out.append(val)
        return out
    for w in pres.relators_in_base():
        val = evaluate_word(w, gens)
        if not val.is_identity() and val not in seen:
            seen.add(val)
            out.append(val)
    return out
