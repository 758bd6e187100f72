'''Modular representations of sl2: reduced enveloping algebras and baby Verma modules.

A p-character is recorded by its values (eta(e), eta(h), eta(f)) and a
Harish-Chandra parameter xi; both live in F_q = GF(p^k). Matrices act on
column vectors, so rho(x) rho(y) = rho(xy).
'''
from dataclasses import dataclass
from math import comb
from typing import Tuple

import numpy as np

from .exceptions import CentralPointError, PreconditionError
from .linalg import field, kron, matrix_power, rank, right_null_space, row_basis
from .logging import setup_logging

info_logger, error_logger = setup_logging()

GENERATORS = ('e', 'h', 'f')


@dataclass(frozen=True)
class CentralPoint:
    p: int
    degree: int
    eta: Tuple[int, int, int]
    xi: int

    @property
    def GF(self):
        return field(self.p, self.degree)

    def value(self, x):
        return self.GF(self.eta[GENERATORS.index(x)])

    @property
    def xi_elt(self):
        return self.GF(self.xi)

    @classmethod
    def from_values(cls, GF, eta, xi):
        return cls(GF.characteristic, GF.degree, tuple(int(GF(v)) for v in eta), int(GF(xi)))

    @classmethod
    def standard(cls, p, degree, xi, e=0, f=0):
        '''Point over xi with eta(h) chosen so that xi^p - xi = eta(h)^p.'''
        GF = field(p, degree)
        xi = GF(xi)
        h = artin_schreier(xi) ** (p ** (degree - 1))
        return cls.from_values(GF, (e, h, f), xi)

    @classmethod
    def kostant(cls, p, degree, xi):
        '''The point (0, 2a, 1) of the Kostant section lying under xi.'''
        return cls.standard(p, degree, xi, e=0, f=1)

    def is_compatible(self):
        '''(xi^p - xi)^2 = q(eta)^p with q(eta) = eta(h)^2 + 4 eta(e) eta(f).'''
        GF = self.GF
        e, h, f = (self.value(x) for x in GENERATORS)
        q = h * h + GF(4 % self.p) * e * f
        return artin_schreier(self.xi_elt) ** 2 == q ** self.p

    def to_json(self):
        return {'field': f'GF({self.p}^{self.degree})', 'eta': list(self.eta), 'xi': self.xi}


def artin_schreier(x):
    GF = type(x)
    return x ** GF.characteristic - x


def casimir_scalar(xi):
    '''Value of C = h^2 + 2h + 4fe on a module of highest weight xi.'''
    GF = type(xi)
    return xi * xi + GF(2) * xi


def dot_reflect(xi):
    GF = type(xi)
    return -xi - GF(2)


def in_t_circ(xi):
    '''No s.xi - xi in F_p minus 0: xi outside F_p, or the fixed point -1.'''
    GF = type(xi)
    minus_one = -GF(1)
    return xi == minus_one or xi ** GF.characteristic != xi


def lie_ok(rho):
    E, H, F = rho['e'], rho['h'], rho['f']
    GF = type(E)
    two = GF(2 % GF.characteristic)
    return (np.array_equal(E @ F - F @ E, H)
            and np.array_equal(H @ E - E @ H, two * E)
            and np.array_equal(H @ F - F @ H, -two * F))


def p_power_ok(rho, pt):
    GF = type(rho['e'])
    n = rho['e'].shape[0]
    ident = GF.Identity(n)
    p = pt.p
    E, H, F = rho['e'], rho['h'], rho['f']
    return (np.array_equal(matrix_power(E, p), pt.value('e') ** p * ident)
            and np.array_equal(matrix_power(F, p), pt.value('f') ** p * ident)
            and np.array_equal(matrix_power(H, p) - H, pt.value('h') ** p * ident))


@dataclass
class BabyVerma:
    point: CentralPoint
    borel: str
    weight: int
    rho: dict

    @property
    def dim(self):
        return self.rho['e'].shape[0]

    def action(self, x):
        return self.rho[x]

    def weights(self):
        return [int(v) for v in np.diagonal(self.rho['h'])]

    def check(self):
        return self.dim == self.point.p and lie_ok(self.rho) and p_power_ok(self.rho, self.point)

    def to_json(self):
        return {'point': self.point.to_json(), 'borel': self.borel,
                'highest_weight': self.weight, 'dim': self.dim}


def build_baby_verma(pt, borel='+', xi=None):
    '''Z_{eta,B}(xi): induced from the Borel `+` (upper) or `-` (lower).'''
    GF = pt.GF
    p = pt.p
    xi = pt.xi_elt if xi is None else GF(xi)
    if borel not in ('+', '-'):
        raise PreconditionError(f'Unknown Borel `{borel}`')
    nil = 'e' if borel == '+' else 'f'
    if pt.value(nil) != 0:
        raise CentralPointError(f'eta({nil}) must vanish for the Borel {borel}')
    if artin_schreier(xi) != pt.value('h') ** p:
        raise CentralPointError('xi and eta do not lie over the same point')
    E, H, F = GF.Zeros((p, p)), GF.Zeros((p, p)), GF.Zeros((p, p))

    def c(k):
        return GF(k % p)

    if borel == '+':
        for i in range(p):
            H[i, i] = xi - c(2 * i)
            if i:
                E[i - 1, i] = c(i) * (xi - c(i - 1))
            F[(i + 1) % p, i] = GF(1) if i < p - 1 else pt.value('f') ** p
    else:
        mu = xi + c(2)
        for i in range(p):
            H[i, i] = mu + c(2 * i)
            if i:
                F[i - 1, i] = -c(i) * (mu + c(i - 1))
            E[(i + 1) % p, i] = GF(1) if i < p - 1 else pt.value('e') ** p
    module = BabyVerma(pt, borel, int(xi), {'e': E, 'h': H, 'f': F})
    if not module.check():
        raise CentralPointError('baby Verma relations failed')
    return module


def simple_module(GF, n):
    '''Restricted simple L(n), 0 <= n <= p - 1, with basis u_0..u_n.'''
    p = GF.characteristic
    if not 0 <= n <= p - 1:
        raise PreconditionError(f'L({n}) is not restricted for p={p}')
    E, H, F = GF.Zeros((n + 1, n + 1)), GF.Zeros((n + 1, n + 1)), GF.Zeros((n + 1, n + 1))
    for i in range(n + 1):
        H[i, i] = (n - 2 * i) % p
        if i < n:
            F[i + 1, i] = 1
        if i:
            E[i - 1, i] = (i * (n - i + 1)) % p
    return {'e': E, 'h': H, 'f': F}


def tensor_modules(a, b):
    GF = type(a['e'])
    ia, ib = GF.Identity(a['e'].shape[0]), GF.Identity(b['e'].shape[0])
    return {x: kron(a[x], ib) + kron(ia, b[x]) for x in GENERATORS}


def casimir(rho):
    H = rho['h']
    GF = type(H)
    return H @ H + GF(2) * H + GF(4 % GF.characteristic) * (rho['f'] @ rho['e'])


def quotient_module(rho, image):
    '''Action on V / span(columns of `image`).'''
    GF = type(rho['e'])
    n = rho['e'].shape[0]
    basis = row_basis(image.T)
    if basis.shape[0] == 0:
        return dict(rho), GF.Identity(n)
    proj = basis.null_space()
    if proj.shape[0] == 0:
        return {x: GF.Zeros((0, 0)) for x in GENERATORS}, proj
    pivots = [int(np.nonzero(row)[0][0]) for row in proj.row_reduce()]
    lift = GF.Zeros((n, proj.shape[0]))
    lift[pivots, :] = np.linalg.inv(proj[:, pivots])
    return {x: proj @ rho[x] @ lift for x in GENERATORS}, proj


def hom_dim(rho1, rho2):
    '''dim Hom(V1, V2) of sl2-modules.'''
    GF = type(rho1['e'])
    n1, n2 = rho1['e'].shape[0], rho2['e'].shape[0]
    if not n1 or not n2:
        return 0
    blocks = [kron(rho2[x], GF.Identity(n1)) - kron(GF.Identity(n2), rho1[x].T) for x in GENERATORS]
    return right_null_space(np.vstack(blocks)).shape[1]


def image_rank(rho):
    '''Rank of span{E^a H^b F^c : 0 <= a, b, c < p} inside End(V).'''
    GF = type(rho['e'])
    p = GF.characteristic
    n = rho['e'].shape[0]
    powers = {x: [GF.Identity(n)] for x in GENERATORS}
    for x in GENERATORS:
        for _ in range(p - 1):
            powers[x].append(powers[x][-1] @ rho[x])
    rows = []
    for a in range(p):
        for b in range(p):
            left = powers['e'][a] @ powers['h'][b]
            for c in range(p):
                rows.append(np.asarray(left @ powers['f'][c]).reshape(-1))
    return rank(GF(np.array(rows)))


def cyclic_submodule(rho, vector):
    GF = type(rho['e'])
    span = row_basis(vector.reshape(1, -1))
    while True:
        new = [span] + [(rho[x] @ span.T).T for x in GENERATORS]
        grown = row_basis(GF(np.vstack([np.asarray(m) for m in new])))
        if grown.shape[0] == span.shape[0]:
            return grown
        span = grown


def centralizer_dim(pt):
    '''dim of the centralizer of X = (eta(h)/2) h + eta(f) e + eta(e) f in sl2.'''
    GF = pt.GF
    e, h, f = (pt.value(x) for x in GENERATORS)
    a = h / GF(2)
    # ad X on the basis (e, h, f); columns are images
    ad = GF.Zeros((3, 3))
    ad[0, 0], ad[1, 0] = GF(2) * a, -e
    ad[0, 1], ad[2, 1] = -GF(2) * f, GF(2) * e
    ad[1, 2], ad[2, 2] = f, -GF(2) * a
    return 3 - rank(ad)


def is_regular(pt):
    return centralizer_dim(pt) == 1


class UChiAlgebra:
    '''U_eta(sl2) through its left-regular representation on e^a h^b f^c.'''

    def __init__(self, pt):
        self.point = pt
        self.p = pt.p
        self.GF = pt.GF
        n = self.p ** 3
        self.dim = n
        self.left = {x: self.GF.Zeros((n, n)) for x in GENERATORS}
        kappa = {x: pt.value(x) ** self.p for x in GENERATORS}
        self._kappa = kappa
        for a in range(self.p):
            for b in range(self.p):
                for c in range(self.p):
                    col = self.index(a, b, c)
                    for x in GENERATORS:
                        for key, val in self._left_multiply(x, a, b, c).items():
                            self.left[x][self.index(*key), col] += val
        self.casimir = casimir(self.left)

    def index(self, a, b, c):
        return (a * self.p + b) * self.p + c

    def _term(self, out, a, hpoly, c, coef):
        GF, p, kappa = self.GF, self.p, self._kappa
        coef = GF(coef % p) if isinstance(coef, int) else coef
        if a >= p:
            a -= p
            coef = coef * kappa['e']
        if c >= p:
            c -= p
            coef = coef * kappa['f']
        poly = {}
        for k, v in hpoly.items():
            v = GF(v % p) if isinstance(v, int) else v
            if k >= p:
                poly[k - p + 1] = poly.get(k - p + 1, GF(0)) + v
                poly[k - p] = poly.get(k - p, GF(0)) + v * kappa['h']
            else:
                poly[k] = poly.get(k, GF(0)) + v
        for k, v in poly.items():
            key = (a, k, c)
            out[key] = out.get(key, GF(0)) + coef * v

    def _left_multiply(self, x, a, b, c):
        out = {}
        if x == 'e':
            self._term(out, a + 1, {b: 1}, c, 1)
        elif x == 'h':
            self._term(out, a, {b + 1: 1, b: 2 * a}, c, 1)
        else:
            self._term(out, a, {j: comb(b, j) * 2 ** (b - j) for j in range(b + 1)}, c + 1, 1)
            if a:
                self._term(out, a - 1, {b + 1: 1, b: a - 1}, c, -a)
        return out

    def check_relations(self):
        return lie_ok(self.left) and p_power_ok(self.left, self.point)

    def reduced_dim(self, xi):
        '''dim U_eta^xi = p^3 - rank(C - c(xi)).'''
        shifted = self.casimir - casimir_scalar(self.GF(xi)) * self.GF.Identity(self.dim)
        return self.dim - rank(shifted)


def is_simple(rho):
    '''Absolutely simple: the image of U is all of End(V).'''
    n = rho['e'].shape[0]
    return n > 0 and image_rank(rho) == n * n


def sample_xis(p, degree, rng, count, generic=True):
    '''Random xi in GF(p^degree); generic ones lie in t*_o and avoid the fixed point -1.'''
    GF = field(p, degree)
    if generic and degree < 2:
        raise PreconditionError('generic xi needs a proper extension of F_p')
    out = []
    while len(out) < count:
        xi = GF(int(rng.integers(0, GF.order)))
        if generic and (not in_t_circ(xi) or xi == -GF(1)):
            continue
        out.append(xi)
    return out


def sample_points(p, degree, rng, count, kind='semisimple'):
    '''Regular central points: `kostant` (0, 2a, 1) or `semisimple` (0, h, 0) over generic xi.'''
    if kind == 'kostant':
        return [CentralPoint.kostant(p, degree, int(xi))
                for xi in sample_xis(p, degree, rng, count, generic=False)]
    if kind != 'semisimple':
        raise PreconditionError(f'Unknown kind of point `{kind}`')
    return [CentralPoint.standard(p, degree, int(xi)) for xi in sample_xis(p, degree, rng, count)]


def verify_matrix_algebra(pt):
    '''U_eta^xi -> End(Z(xi)) is bijective for regular eta.'''
    if not is_regular(pt):
        raise PreconditionError('eta is not regular')
    module = build_baby_verma(pt)
    algebra = UChiAlgebra(pt)
    p = pt.p
    dim_u = algebra.reduced_dim(pt.xi_elt)
    img = image_rank(module.rho)
    report = {
        'point': pt.to_json(),
        'dim_reduced_algebra': dim_u,
        'dim_end': p * p,
        'image_rank': img,
        'relations': algebra.check_relations(),
        'simple': img == p * p,
    }
    report['bijective'] = dim_u == p * p and img == p * p and report['relations']
    info_logger.debug('matrix algebra check', **report)
    return report


def borels_agree(pt):
    '''Z_{B+}(xi) and Z_{B-}(xi) are isomorphic (pt must have eta(e) = eta(f) = 0).'''
    plus = build_baby_verma(pt, '+')
    minus = build_baby_verma(pt, '-')
    return hom_dim(plus.rho, minus.rho) == 1


def casimir_on(module):
    '''The scalar by which C acts on `module`, or None if it is not scalar.'''
    C = casimir(module.rho)
    scalar = C[0, 0]
    if not np.array_equal(C, scalar * type(C).Identity(module.dim)):
        return None
    return int(scalar)


def hc_center_check(pt):
    '''The Casimir acts on Z(xi) and Z(s.xi) by the scalar c(xi).'''
    GF = pt.GF
    xi = pt.xi_elt
    flipped = CentralPoint.from_values(GF, (pt.value('e'), -pt.value('h'), pt.value('f')), dot_reflect(xi))
    scalars = [casimir_on(build_baby_verma(point)) for point in (pt, flipped)]
    expected = int(casimir_scalar(xi))
    return {
        'point': pt.to_json(),
        'orbit': sorted({int(xi), int(dot_reflect(xi))}),
        'scalars': scalars,
        'expected': expected,
        'passed': scalars == [expected, expected],
    }


def hc_center_separation(p, degree, rng, pairs=20):
    '''Casimir scalars on Z(xi) and Z(xi') agree exactly when xi' lies in W . xi.

    Roughly half of the pairs are drawn inside one orbit.
    '''
    GF = field(p, degree)
    failures = []
    same = 0
    for _ in range(pairs):
        xi, other = (GF(int(v)) for v in rng.integers(0, GF.order, 2))
        if rng.integers(0, 2):
            other = dot_reflect(xi)
        linked = other in (xi, dot_reflect(xi))
        same += linked
        scalars = [casimir_on(build_baby_verma(CentralPoint.standard(p, degree, int(x)))) for x in (xi, other)]
        if None in scalars or (scalars[0] == scalars[1]) != linked:
            failures.append({'xi': int(xi), 'other': int(other), 'linked': linked, 'scalars': scalars})
    report = {'field': f'GF({p}^{degree})', 'pairs': pairs, 'linked_pairs': same,
              'failures': failures, 'passed': not failures}
    info_logger.debug('center separation', **report)
    return report


def _central_quotient(rho, scalar):
    GF = type(rho['e'])
    shifted = casimir(rho) - scalar * GF.Identity(rho['e'].shape[0])
    quotient, _ = quotient_module(rho, shifted)
    return quotient


def translation_fiber(lam, pt, mu=-1):
    '''Fiber of translation from mu to lam: the c(xi+n) part of L(n) tensor Z(xi), n = lam - mu.

    The bimodule is the c(xi+n) part of L(n) tensor U_eta^xi under the diagonal
    left action, with U_eta^xi built as a quotient of the regular representation.
    '''
    GF = pt.GF
    p = pt.p
    xi = pt.xi_elt
    if not in_t_circ(xi):
        raise CentralPointError(f'xi={int(xi)} lies outside t*_o')
    n = lam - mu
    if not 0 <= n <= p - 1:
        raise PreconditionError(f'lambda - mu = {n} is not restricted for p={p}')
    target_xi = xi + GF(n % p)
    c_top = casimir_scalar(target_xi)
    simple = simple_module(GF, n)
    base = build_baby_verma(pt)
    fiber = _central_quotient(tensor_modules(simple, base.rho), c_top)
    target = build_baby_verma(pt, xi=target_xi)
    reduced = _central_quotient(UChiAlgebra(pt).left, casimir_scalar(xi))
    bimodule = _central_quotient(tensor_modules(simple, reduced), c_top)
    surviving = sum(1 for j in range(n + 1) if casimir_scalar(target_xi - GF((2 * j) % p)) == c_top)
    dim = fiber['e'].shape[0]
    report = {
        'lambda': lam,
        'mu': mu,
        'point': pt.to_json(),
        'dim': dim,
        'hom_to_verma': hom_dim(fiber, target.rho),
        'surviving': surviving,
        'reduced_dim': reduced['e'].shape[0],
        'bimodule_dim': bimodule['e'].shape[0],
        'simple': is_simple(fiber),
    }
    report['passed'] = (dim == p and report['hom_to_verma'] == 1 and report['reduced_dim'] == p * p
                        and report['bimodule_dim'] == p * p and report['simple']
                        and (surviving == 1 or xi == -GF(1)))
    info_logger.debug('translation fiber', **report)
    return report


def wall_crossing_fiber(w, b, p, degree=2, lam=0, mu=-1):
    '''Two-step filtration of L(1) tensor Z(w.mu) at the regular nilpotent point (0, 0, b).'''
    if w not in ('e', 's'):
        raise PreconditionError(f'w must be e or s, got {w!r}')
    if (mu + 1) % p != 0:
        raise PreconditionError('mu must lie on the wall <mu + rho, alpha^v> = 0')
    GF = field(p, degree)
    if GF(b) == 0:
        raise PreconditionError('b must be nonzero')
    pt = CentralPoint.from_values(GF, (0, 0, b), mu % p)
    base = build_baby_verma(pt)
    nu = lam - mu
    product = tensor_modules(simple_module(GF, nu), base.rho)
    size = product['e'].shape[0]
    shifted = casimir(product) - casimir_scalar(GF(lam % p)) * GF.Identity(size)
    # generalized eigenspace: C need not act semisimply on the block
    dim = size - rank(matrix_power(shifted, size))
    top = GF.Zeros(product['e'].shape[0])
    top[0] = 1
    sub = cyclic_submodule(product, top)
    quotient, proj = quotient_module(product, sub.T)
    second = GF.Zeros(product['e'].shape[0])
    second[base.dim] = 1
    image = proj @ second
    hw_ok = not np.any(quotient['e'] @ image)
    generated = cyclic_submodule(quotient, image).shape[0] == quotient['e'].shape[0]
    sub_weight = int(product['h'][0, 0])
    quotient_weight = int(product['h'][base.dim, base.dim])
    lam_w = lam if w == 'e' else -lam - 2
    lam_ws = -lam - 2 if w == 'e' else lam
    longer = w == 'e'
    expected_sub = lam_w if longer else lam_ws
    expected_quotient = lam_ws if longer else lam_w
    report = {
        'w': w,
        'field': f'GF({p}^{degree})',
        'dim': dim,
        'sub_dim': sub.shape[0],
        'quotient_dim': quotient['e'].shape[0],
        'sub_weight': sub_weight,
        'quotient_weight': quotient_weight,
        'sub_is': 'w.lambda' if longer else 'ws.lambda',
        'bimodule_dim': dim * p,
    }
    report['passed'] = (dim == 2 * p and sub.shape[0] == p and report['quotient_dim'] == p
                        and hw_ok and generated
                        and sub_weight == expected_sub % p and quotient_weight == expected_quotient % p)
    info_logger.debug('wall crossing fiber', **report)
    return report


def tensor_over_algebra_dim(left, right):
    '''dim Z* tensor_U Q for left module `left` (dualised) and left module `right`.'''
    GF = type(left['e'])
    m, n = left['e'].shape[0], right['e'].shape[0]
    rows = []
    for x in GENERATORS:
        A, B = left[x], right[x]
        for i in range(m):
            for j in range(n):
                vec = GF.Zeros(m * n)
                for k in range(m):
                    vec[k * n + j] += A[i, k]
                for l_ in range(n):
                    vec[i * n + l_] -= B[l_, j]
                rows.append(np.asarray(vec))
    return m * n - rank(GF(np.array(rows)))


def splitting_triple(lam, mu, pt):
    '''(zeta1, zeta2, zeta3): zeta2 = pt sits at -rho, zeta1 over xi + lam + 1, zeta3 over xi - mu - 1.'''
    GF = pt.GF
    eta = tuple(pt.value(x) for x in GENERATORS)
    xi = pt.xi_elt
    return (CentralPoint.from_values(GF, eta, xi + GF((lam + 1) % pt.p)),
            pt,
            CentralPoint.from_values(GF, eta, xi - GF((mu + 1) % pt.p)))


def splitting_fiber_rank(lam, mu, triple):
    '''Fiber dimension of the splitting module for mu -> -rho -> lam over a sample triple.

    The two translation fibers are cut out of L(lam + 1) tensor Z(zeta2) and
    L(mu + 1) tensor Z(zeta3); the middle factor is Z(zeta2)* tensored over U
    with the second fiber.
    '''
    top, mid, low = triple
    GF, p = mid.GF, mid.p
    n1, n2 = lam + 1, mu + 1
    if not (0 <= n1 <= p - 1 and 0 <= n2 <= p - 1):
        raise PreconditionError('lambda and mu must lie in the lower closure')
    if top.eta != mid.eta or low.eta != mid.eta \
            or top.xi_elt != mid.xi_elt + GF(n1 % p) or low.xi_elt != mid.xi_elt - GF(n2 % p):
        raise PreconditionError('the sample triple does not pass through the middle point')
    z_top, z_mid, z_low = (build_baby_verma(pt) for pt in triple)
    first = _central_quotient(tensor_modules(simple_module(GF, n1), z_mid.rho), casimir_scalar(top.xi_elt))
    second = _central_quotient(tensor_modules(simple_module(GF, n2), z_low.rho), casimir_scalar(mid.xi_elt))
    middle = tensor_over_algebra_dim(z_mid.rho, second)
    dim = first['e'].shape[0] * middle * z_low.dim
    info_logger.debug('splitting fiber', lam=lam, mu=mu, point=mid.to_json(), dim=dim, middle=middle,
                      first_is_verma=hom_dim(first, z_top.rho) == 1)
    return dim
