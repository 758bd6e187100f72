'''Hecke algebra of the extended affine Weyl group.

Standard basis H_x with the quadratic relation H_s^2 = (v^-1 - v) H_s + 1,
the Kazhdan-Lusztig basis b_w = H_w + sum_{y<w} h_{y,w} H_y (h in vZ[v]),
p-canonical characters read off the Soergel category, the antispherical
quotient and tilting characters for SL2.
'''
from .exceptions import NotAffineError, ObjectInvariantError, PreconditionError
from .logging import setup_logging
from .utils import laurent_str

info_logger, error_logger = setup_logging()


class LaurentInt:
    '''Integer Laurent polynomial in v.'''
    __slots__ = ('coeffs',)

    def __init__(self, coeffs=None):
        self.coeffs = {int(k): int(c) for k, c in (coeffs or {}).items() if c}

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def v(cls, k=1):
        return cls({k: 1})

    def _coerce(self, other):
        if isinstance(other, LaurentInt):
            return other
        if isinstance(other, int):
            return LaurentInt.const(other)
        return NotImplemented

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return LaurentInt(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentInt({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentInt(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = LaurentInt.const(1)
        for _ in range(k):
            out = out * self
        return out

    def coefficient(self, k):
        return self.coeffs.get(k, 0)

    def shift(self, k):
        return LaurentInt({e + k: c for e, c in self.coeffs.items()})

    def bar(self):
        return LaurentInt({-e: c for e, c in self.coeffs.items()})

    def at_one(self):
        return sum(self.coeffs.values())

    @property
    def is_self_dual(self):
        return self == self.bar()

    def in_positive_part(self):
        '''True if the polynomial lies in vZ[v].'''
        return all(k > 0 for k in self.coeffs)

    def is_nonnegative(self):
        return all(c > 0 for c in self.coeffs.values())

    def to_json(self):
        return {str(k): c for k, c in sorted(self.coeffs.items())}

    def __str__(self):
        return laurent_str(self.coeffs)

    __repr__ = __str__


V = LaurentInt.v()
V_INV = LaurentInt.v(-1)


class HeckeElt:
    '''Finitely supported combination of standard basis elements H_x.'''
    __slots__ = ('algebra', 'coeffs')

    def __init__(self, algebra, coeffs=None):
        self.algebra = algebra
        self.coeffs = {x: c for x, c in (coeffs or {}).items() if c}

    def __getitem__(self, x):
        return self.coeffs.get(x, LaurentInt())

    def items(self):
        return self.coeffs.items()

    @property
    def support(self):
        return sorted(self.coeffs, key=self.algebra.sort_key)

    @property
    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        out = dict(self.coeffs)
        for x, c in other.coeffs.items():
            out[x] = out[x] + c if x in out else c
        return HeckeElt(self.algebra, out)

    def __neg__(self):
        return HeckeElt(self.algebra, {x: -c for x, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return HeckeElt(self.algebra, {x: v * c for x, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElt):
            return self.algebra.mult(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def at_one(self):
        return {x: c.at_one() for x, c in self.coeffs.items() if c.at_one()}

    def to_json(self):
        name = self.algebra.datum.name
        return {name(x): c.to_json() for x, c in self.coeffs.items()}

    def __str__(self):
        if not self.coeffs:
            return '0'
        name = self.algebra.datum.name
        return ' + '.join(f'({self.coeffs[x]})H_{name(x)}' for x in reversed(self.support))

    __repr__ = __str__


class AntisphericalElt:
    '''Combination of N_y, y a minimal representative of W_f \\ W_aff.'''
    __slots__ = ('datum', 'coeffs')

    def __init__(self, datum, coeffs=None):
        self.datum = datum
        self.coeffs = {y: c for y, c in (coeffs or {}).items() if c}

    def __getitem__(self, y):
        return self.coeffs.get(y, LaurentInt())

    def items(self):
        return self.coeffs.items()

    def at_one(self):
        return {y: c.at_one() for y, c in self.coeffs.items() if c.at_one()}

    def to_json(self):
        return {self.datum.name(y): c.to_json() for y, c in self.coeffs.items()}


class HeckeAlgebra:

    def __init__(self, datum):
        self.datum = datum
        self._kl_cache = {}
        order = {g: k for k, g in enumerate(datum.generators)}
        self._order = order

    def sort_key(self, x):
        word, omega = self.datum.factor(x)
        return (len(word), [self._order[i] for i in word], omega.translation, omega.finite.word)

    def zero(self):
        return HeckeElt(self)

    def standard(self, x):
        return HeckeElt(self, {x: LaurentInt.const(1)})

    def one(self):
        return self.standard(self.datum.identity)

    def generator(self, s):
        return self.standard(self.datum.simple_reflection(s))

    def bs_character(self, s):
        '''ch(B_s) = H_s + v.'''
        return self.generator(s) + self.one().scale(V)

    def _times_generator(self, elt, s):
        datum = self.datum
        gen = datum.simple_reflection(s)
        out = {}

        def add(x, c):
            out[x] = out[x] + c if x in out else c

        for x, c in elt.items():
            xs = x * gen
            add(xs, c)
            if datum.length(xs) < datum.length(x):
                add(x, c * (V_INV - V))
        return HeckeElt(self, out)

    def mult(self, a, b):
        out = self.zero()
        for y, cy in b.items():
            word, omega = self.datum.factor(y)
            part = a.scale(cy)
            for s in word:
                part = self._times_generator(part, s)
            part = HeckeElt(self, {x * omega: c for x, c in part.items()})
            out = out + part
        return out

    def bar(self, elt):
        '''The ring involution v -> v^-1, H_x -> (H_{x^-1})^-1.'''
        out = self.zero()
        for y, c in elt.items():
            word, omega = self.datum.factor(y)
            term = self.one().scale(c.bar())
            for s in word:
                term = self._times_generator(term, s) + term.scale(V - V_INV)
            out = out + HeckeElt(self, {x * omega: cx for x, cx in term.items()})
        return out

    def epsilon(self, elt):
        '''The v-linear map H_x -> v^{-l(x)}; on characters it gives the graded left rank.'''
        out = LaurentInt()
        for x, c in elt.items():
            out = out + c.shift(-self.datum.length(x))
        return out

    def kl_basis(self, w):
        '''Self-dual b_w with h_{y,w} in vZ[v] for y < w.'''
        if w in self._kl_cache:
            return self._kl_cache[w]
        datum = self.datum
        word, omega = datum.factor(w)
        if not omega.is_identity:
            res = self.kl_basis(w * omega.inverse) * self.standard(omega)
        elif not word:
            res = self.one()
        else:
            s = word[-1]
            ws = w * datum.simple_reflection(s)
            res = self.kl_basis(ws) * self.bs_character(s)
            while True:
                bad = [y for y, c in res.items() if y != w and c.coefficient(0)]
                if not bad:
                    break
                y = max(bad, key=self.sort_key)
                res = res - self.kl_basis(y).scale(res[y].coefficient(0))
        self._kl_cache[w] = res
        return res

    def kl_expansion(self, elt):
        '''Coefficients m_y with elt = sum m_y b_y, peeled from the top.'''
        remaining = elt
        out = {}
        while remaining:
            y = max(remaining.coeffs, key=self.sort_key)
            c = remaining[y]
            out[y] = c
            remaining = remaining - self.kl_basis(y).scale(c)
        return out

    def _strip_finite(self, x):
        datum = self.datum
        steps = 0
        while True:
            lx = datum.length(x)
            desc = [i for i in datum.finite_generators if datum.length(datum.simple_reflection(i) * x) < lx]
            if not desc:
                return x, steps
            x = datum.simple_reflection(desc[0]) * x
            steps += 1

    def antispherical(self, elt):
        '''Image in the antispherical module: H_x -> (-v)^{l(u)} N_y for x = u y.'''
        out = {}
        for x, c in elt.items():
            y, steps = self._strip_finite(x)
            term = c * (LaurentInt.v(steps) * ((-1) ** steps))
            out[y] = out[y] + term if y in out else term
        return AntisphericalElt(self.datum, out)


def ch(M):
    '''Graded character sum_x grk(M^x) H_x of a constructed Soergel object.'''
    if M.character is None:
        raise ObjectInvariantError(f'{M.name} carries no graded character')
    return M.character


def _require_affine(datum, w):
    if not datum.is_affine(w):
        raise NotAffineError(f'{w} does not lie in the affine Weyl group')


def p_canonical(category, w):
    '''^p b_w: the character of the indecomposable Soergel bimodule B_w.'''
    _require_affine(category.datum, w)
    return category.indecomposable(w).character


def p_canonical_table(category, max_len):
    '''Rows (w, y, ^p h_{y,w}, h_{y,w}) for all w of length <= max_len.'''
    algebra = category.hecke
    rows = []
    for w in category.datum.elements_up_to(max_len):
        pcan = p_canonical(category, w)
        kl = algebra.kl_basis(w)
        for y in pcan.support:
            rows.append({
                'w': category.datum.name(w),
                'y': category.datum.name(y),
                'p_h': str(pcan[y]),
                'h': str(kl[y]),
            })
        info_logger.debug('p-canonical element', w=category.datum.name(w), terms=len(pcan.coeffs))
    return rows


def antispherical_pkl(category, y, w):
    datum = category.datum
    if not (datum.is_minimal_coset_rep(y) and datum.is_minimal_coset_rep(w)):
        raise PreconditionError('antispherical coefficients need minimal coset representatives')
    return category.hecke.antispherical(p_canonical(category, w))[y]


def tilting_multiplicities(category, w):
    '''[T(w.0) : chi(y.0)] as ^p n_{y,w}(1).'''
    datum = category.datum
    if not datum.is_minimal_coset_rep(w):
        raise PreconditionError(f'{datum.name(w)} is not a minimal coset representative')
    return category.hecke.antispherical(p_canonical(category, w)).at_one()


def tilting_table(category, max_len):
    '''Tilting characters keyed by weights y.0, for w of length <= max_len.'''
    datum = category.datum
    zero = (0,) * datum.rank
    table = []
    for w in datum.antispherical_elements(max_len):
        mults = tilting_multiplicities(category, w)
        table.append({
            'w': datum.name(w),
            'length': datum.length(w),
            'weight': list(datum.dot(w, zero)),
            'character': {tuple(datum.dot(y, zero)): m for y, m in mults.items()},
        })
    return table


def compare_with_oracle(category, max_len):
    '''Weight-level comparison of the tilting table with the SL2 oracle; returns mismatches.'''
    datum = category.datum
    if datum.rank != 1:
        raise PreconditionError('the SL2 oracle only covers rank one')
    mismatches = []
    table = tilting_table(category, max_len)
    for row in table:
        n = row['weight'][0]
        got = {lam[0]: m for lam, m in row['character'].items()}
        expected = sl2_tilting_oracle(n, datum.prime)
        if got != expected:
            mismatches.append({'weight': n, 'computed': got, 'oracle': expected})
    info_logger.info('oracle comparison', max_len=max_len, rows=len(table), mismatches=len(mismatches))
    return mismatches


def _alcove_point(m, lam, p):
    '''Move lam (0 <= lam <= p - 2) into the alcove containing the regular weight m.'''
    j = (m + 1) // p
    return j * p + (lam if j % 2 == 0 else p - 2 - lam)


def sl2_engine_tilting(category, max_weight):
    '''ch T(n) for 0 <= n <= max_weight from the antispherical p-canonical basis.

    Regular weights are moved into the principal block by translation. Weights
    n = p - 1 + pm use T(n) = St tensor T(m)^[1].
    '''
    datum = category.datum
    if datum.rank != 1:
        raise PreconditionError('SL2 tilting characters need rank one')
    p = datum.prime
    principal = {row['weight'][0]: {lam[0]: c for lam, c in row['character'].items()}
                 for row in tilting_table(category, (max_weight + 1) // p)}
    out = {}
    for n in range(max_weight + 1):
        if (n + 1) % p == 0:
            out[n] = {p - 1 + p * k: c for k, c in out[(n + 1 - p) // p].items()}
            continue
        k = (n + 1) // p
        lam = n - k * p if k % 2 == 0 else k * p + p - 2 - n
        out[n] = {_alcove_point(m, lam, p): c for m, c in principal[_alcove_point(k * p, 0, p)].items()}
    return out


# SL2 tilting characters from Weyl characters alone

def _normalize_weyl(chars):
    '''Rewrite chi(m), m < 0, by chi(-1) = 0 and chi(-m-2) = -chi(m).'''
    out = {}
    for m, c in chars.items():
        if m == -1:
            continue
        if m < -1:
            m, c = -m - 2, -c
        out[m] = out.get(m, 0) + c
    return {m: c for m, c in out.items() if c}


def weyl_weights(chars):
    '''Formal character (weight -> multiplicity) of a sum of Weyl characters.'''
    out = {}
    for m, c in chars.items():
        for mu in range(-m, m + 1, 2):
            out[mu] = out.get(mu, 0) + c
    return {mu: c for mu, c in out.items() if c}


def _brauer(chars, weights):
    out = {}
    for m, c in chars.items():
        for mu, k in weights.items():
            out[m + mu] = out.get(m + mu, 0) + c * k
    return _normalize_weyl(out)


def sl2_tilting_oracle(n, p):
    '''ch T(n) for SL2 in characteristic p as {m: [T(n) : chi(m)]}.'''
    if n < 0 or p < 3:
        raise PreconditionError(f'oracle needs n >= 0 and p >= 3, got n={n}, p={p}')
    if n <= p - 1:
        return {n: 1}
    if n <= 2 * p - 2:
        return _normalize_weyl({n: 1, 2 * p - 2 - n: 1})
    m, r = divmod(n - (p - 1), p)
    base = sl2_tilting_oracle(p - 1 + r, p)
    twisted = {p * mu: c for mu, c in weyl_weights(sl2_tilting_oracle(m, p)).items()}
    return _brauer(base, twisted)
