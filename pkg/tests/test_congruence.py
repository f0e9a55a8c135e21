import pytest

from grouprank import (
    GroupRankError,
    ImageBudgetExceeded,
    Mat,
    NumberFieldSpec,
    enumerate_image,
    evaluate_word,
    kernel_normal_generators,
    reduce_matrix,
    schreier_presentation,
    select_prime,
    valid_primes,
)
from grouprank.congruence import cyclic_canonical, free_reduce, word_inverse
from grouprank.numberfield import QF, FiniteField

from conftest import QRAT, diag, eij, mat, random_invertible

GAUSS = NumberFieldSpec((1, 0, 1))
SQRT5 = NumberFieldSpec((-5, 0, 1))


def test_select_prime_examples():
    g = Mat(GAUSS, [[GAUSS.from_fraction(QF(1, 3)), GAUSS.zero],
                    [GAUSS.zero, GAUSS.from_int(3)]])
    site = select_prime([g], GAUSS)
    assert site.p == 5
    assert site.factor == (3, 1)  # g = X - 2
    assert site.ff.beta() == (2,)

    site2 = select_prime([Mat.identity(QRAT, 1)], QRAT)
    assert site2.p == 5

    site3 = select_prime([Mat.identity(SQRT5, 1)], SQRT5)
    assert site3.p == 7  # 5 divides disc = 20


def test_select_prime_rejects_bad_override():
    g = Mat.identity(SQRT5, 1)
    with pytest.raises(GroupRankError, match="discriminant"):
        select_prime([g], SQRT5, prime=5)
    with pytest.raises(GroupRankError, match="prime"):
        select_prime([g], SQRT5, prime=3)
    d = diag(QRAT, [7, QF(1, 7)])
    with pytest.raises(GroupRankError, match="denominator"):
        select_prime([d], QRAT, prime=7)


def test_valid_primes():
    d = diag(QRAT, [2, QF(1, 2)])
    assert valid_primes([d], QRAT, 3) == [5, 7, 11]


def test_reduce_examples():
    d = diag(QRAT, [2, QF(1, 2)])
    site = select_prime([d], QRAT)
    rd = reduce_matrix(d, site)
    assert rd == Mat(site.ff, [[(2,), (0,)], [(0,), (3,)]])
    assert reduce_matrix(Mat.identity(QRAT, 2), site).is_identity()


def test_reduce_is_homomorphism(rng):
    gens = [random_invertible(GAUSS, 2, rng) for _ in range(4)]
    site = select_prime(gens, GAUSS)
    for _ in range(100):
        a = rng.choice(gens)
        b = rng.choice(gens)
        assert reduce_matrix(a * b, site) == reduce_matrix(a, site) * reduce_matrix(b, site)


def test_reduce_rejects_bad_denominator():
    d = diag(QRAT, [2, QF(1, 2)])
    site = select_prime([d], QRAT)
    with pytest.raises(GroupRankError):
        reduce_matrix(diag(QRAT, [QF(1, 5), 1]), site)


def test_enumerate_examples():
    rot = mat(QRAT, [[0, -1], [1, 0]])
    site = select_prime([rot], QRAT)
    img = enumerate_image([reduce_matrix(rot, site)])
    assert img.order == 4
    imgi = enumerate_image([reduce_matrix(Mat.identity(QRAT, 2), site)])
    assert imgi.order == 1
    ff3 = FiniteField(3, (0, 1))
    a = Mat(ff3, [[(1,), (1,)], [(0,), (1,)]])
    b = Mat(ff3, [[(1,), (0,)], [(1,), (1,)]])
    assert enumerate_image([a, b]).order == 24  # SL(2,3)


def test_enumerate_order_independent_of_generator_order(rng):
    ff = FiniteField(5, (0, 1))
    a = Mat(ff, [[(1,), (1,)], [(0,), (1,)]])
    b = Mat(ff, [[(2,), (0,)], [(0,), (3,)]])
    assert enumerate_image([a, b]).order == enumerate_image([b, a]).order


def test_enumerate_budget():
    ff3 = FiniteField(3, (0, 1))
    a = Mat(ff3, [[(1,), (1,)], [(0,), (1,)]])
    b = Mat(ff3, [[(1,), (0,)], [(1,), (1,)]])
    with pytest.raises(ImageBudgetExceeded) as info:
        enumerate_image([a, b], budget=10)
    assert info.value.count == 10
    assert info.value.budget == 10


def test_presentation_examples():
    rot = mat(QRAT, [[0, -1], [1, 0]])
    site = select_prime([rot], QRAT)
    img = enumerate_image([reduce_matrix(rot, site)])
    pres = schreier_presentation(img)
    assert pres.relators == (((0, 1),) * 4,)

    ident = Mat.identity(QRAT, 2)
    imgi = enumerate_image([reduce_matrix(ident, site)])
    presi = schreier_presentation(imgi)
    assert presi.relators == (((0, 1),),)

    # two equal involutions
    s = mat(QRAT, [[0, 1], [1, 0]])
    site2 = select_prime([s, s], QRAT)
    img2 = enumerate_image([reduce_matrix(s, site2), reduce_matrix(s, site2)])
    pres2 = schreier_presentation(img2)
    keys = set(pres2.relators)
    assert cyclic_canonical(((0, 1), (0, 1))) in keys

    def canon_pm(w):
        return min(cyclic_canonical(w), cyclic_canonical(word_inverse(w)))

    # x1 * x2^{-1} up to reduction, rotation, and orientation
    assert any(canon_pm(w) == canon_pm(((0, 1), (1, -1))) for w in pres2.relators)


def test_relators_evaluate_to_identity_in_image(rng):
    gens = [random_invertible(QRAT, 2, rng) for _ in range(2)]
    site = select_prime(gens, QRAT)
    imgs = [reduce_matrix(g, site) for g in gens]
    img = enumerate_image(imgs, budget=5000)
    pres = schreier_presentation(img)
    for w in pres.relators:
        assert evaluate_word(w, imgs).is_identity()


def test_kernel_normal_generators_examples():
    rot = mat(QRAT, [[0, -1], [1, 0]])
    site = select_prime([rot], QRAT)
    img = enumerate_image([reduce_matrix(rot, site)])
    assert kernel_normal_generators([rot], schreier_presentation(img), img) == []

    d = diag(QRAT, [2, QF(1, 2)])
    site = select_prime([d], QRAT)
    img = enumerate_image([reduce_matrix(d, site)])
    ker = kernel_normal_generators([d], schreier_presentation(img), img)
    assert ker == [diag(QRAT, [16, QF(1, 16)])]

    u = eij(QRAT, 2, 0, 1)
    site = select_prime([u], QRAT)
    img = enumerate_image([reduce_matrix(u, site)])
    ker = kernel_normal_generators([u], schreier_presentation(img), img)
    assert ker == [eij(QRAT, 2, 0, 1, 5)]


def test_kernel_generators_reduce_to_identity(rng):
    gens = [random_invertible(QRAT, 2, rng) for _ in range(2)]
    site = select_prime(gens, QRAT)
    img = enumerate_image([reduce_matrix(g, site) for g in gens], budget=5000)
    pres = schreier_presentation(img)
    for y in kernel_normal_generators(gens, pres, img):
        assert reduce_matrix(y, site).is_identity()


def test_kernel_generators_have_infinite_order():
    # congruence kernels in characteristic zero are torsion-free
    from grouprank.matrix import minpoly
    from grouprank.splitting import factor_rational_poly
    import sympy
    d = diag(QRAT, [2, QF(1, 2)])
    site = select_prime([d], QRAT)
    img = enumerate_image([reduce_matrix(d, site)])
    for y in kernel_normal_generators([d], schreier_presentation(img), img):
        mp = [c[0] for c in minpoly(y)]
        squarefree = all(m == 1 for _f, m in factor_rational_poly(mp))
        cyclotomic = all(_is_cyclotomic(f) for f, _ in factor_rational_poly(mp))
        assert not (squarefree and cyclotomic)


def _is_cyclotomic(fac):
    import sympy
    x = sympy.symbols("x")
    deg = len(fac) - 1
    for k in range(1, 4 * deg * deg + 7):
        if sympy.totient(k) == deg:
            cyc = sympy.Poly(sympy.cyclotomic_poly(k, x), x).all_coeffs()
            if list(reversed([int(c) for c in cyc])) == [int(c) for c in fac]:
                return True
    return False


def test_evaluate_word():
    a = mat(QRAT, [[1, 1], [0, 1]])
    b = mat(QRAT, [[1, 0], [1, 1]])
    assert evaluate_word(((0, 1), (1, 1)), [a, b]) == a * b
    assert evaluate_word((), [a]) == Mat.identity(QRAT, 2)
    assert evaluate_word(((0, -1),), [a]) == a.inverse()
    with pytest.raises(GroupRankError):
        evaluate_word(((3, 1),), [a])


def test_word_helpers():
    w = ((0, 1), (1, 1), (1, -1), (0, 1))
    assert free_reduce(w) == ((0, 1), (0, 1))
    assert free_reduce(w + word_inverse(w)) == ()
    assert cyclic_canonical(((0, -1), (1, 1), (0, 1))) == cyclic_canonical(((1, 1),))
