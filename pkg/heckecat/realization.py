'''The graded ring R = Sym(t) over F_p, its fraction field, and the W-action.

Polynomial variables x_1..x_n are the dual basis of X^v (t = X^v tensor F_p);
each variable has degree 2. A point z of t* over F_q is a weight vector, and
(w f)(z) = f(w * z) with w * z = M_{w^-1} z.
'''
from functools import lru_cache

import numpy as np
from sympy.polys.domains import GF as SympyGF
from sympy.polys.fields import field as frac_field
from sympy.polys.matrices import DomainMatrix

from .exceptions import NonExactDivision, RealizationError
from .linalg import extension_degree, field


def grlex_key(exp):
    return (sum(exp), exp)


@lru_cache(maxsize=None)
def monomials(nvars, total):
    '''Exponent vectors of the given total degree, in decreasing grlex order.'''
    if nvars == 1:
        return ((total,),)
    out = []
    for first in range(total, -1, -1):
        for rest in monomials(nvars - 1, total - first):
            out.append((first,) + rest)
    return tuple(out)


def slice_dim(nvars, degree):
    '''dim R_degree (R-degree, generators in degree 2).'''
    if degree < 0 or degree % 2:
        return 0
    return len(monomials(nvars, degree // 2))


class GradedPoly:
    __slots__ = ('p', 'nvars', 'terms')

    def __init__(self, p, nvars, terms=None):
        self.p = p
        self.nvars = nvars
        clean = {}
        for exp, c in (terms or {}).items():
            c %= p
            if c:
                clean[tuple(exp)] = c
        self.terms = clean

    @classmethod
    def const(cls, p, nvars, c):
        return cls(p, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, p, nvars, j):
        return cls(p, nvars, {tuple(int(i == j) for i in range(nvars)): 1})

    @classmethod
    def linear(cls, p, coeffs):
        n = len(coeffs)
        return cls(p, n, {tuple(int(i == j) for i in range(n)): c for j, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, p, exp, c=1):
        return cls(p, len(exp), {tuple(exp): c})

    def _new(self, terms):
        return GradedPoly(self.p, self.nvars, terms)

    def _coerce(self, other):
        if isinstance(other, GradedPoly):
            return other
        if isinstance(other, int):
            return GradedPoly.const(self.p, self.nvars, other)
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, 0) + c
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self._new({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, GradedPoly):
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                terms[exp] = terms.get(exp, 0) + c1 * c2
        return self._new(terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = GradedPoly.const(self.p, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    @property
    def total_degree(self):
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    @property
    def degree(self):
        '''R-degree of the top homogeneous part (None for zero).'''
        td = self.total_degree
        return None if td is None else 2 * td

    @property
    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, degree):
        return self._new({e: c for e, c in self.terms.items() if 2 * sum(e) == degree})

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def coefficient(self, exp):
        return self.terms.get(tuple(exp), 0)

    def leading(self):
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def divmod(self, divisor):
        '''Multivariate division in grlex order: self = q * divisor + r.'''
        if divisor.is_zero:
            raise RealizationError('Division by the zero polynomial')
        lexp, lc = divisor.leading()
        inv = pow(lc, -1, self.p)
        quot, rem = {}, {}
        work = dict(self.terms)
        while work:
            exp = max(work, key=grlex_key)
            c = work[exp]
            if all(a >= b for a, b in zip(exp, lexp)):
                qexp = tuple(a - b for a, b in zip(exp, lexp))
                qc = c * inv % self.p
                quot[qexp] = qc
                for dexp, dc in divisor.terms.items():
                    texp = tuple(a + b for a, b in zip(qexp, dexp))
                    val = (work.get(texp, 0) - qc * dc) % self.p
                    if val:
                        work[texp] = val
                    else:
                        work.pop(texp, None)
            else:
                rem[exp] = c
                del work[exp]
        return self._new(quot), self._new(rem)

    def exact_div(self, divisor):
        quot, rem = self.divmod(divisor)
        if rem:
            raise NonExactDivision(f'{self!r} is not divisible by {divisor!r}')
        return quot

    def substitute(self, images):
        '''Ring map sending x_j to images[j].'''
        out = GradedPoly(self.p, images[0].nvars if images else self.nvars)
        powers = [{0: GradedPoly.const(self.p, out.nvars, 1)} for _ in images]
        for exp, c in self.terms.items():
            term = GradedPoly.const(self.p, out.nvars, c)
            for j, e in enumerate(exp):
                if not e:
                    continue
                if e not in powers[j]:
                    powers[j][e] = images[j] ** e
                term = term * powers[j][e]
            out = out + term
        return out

    def evaluate(self, points):
        '''Values at an (N, nvars) array of points over some F_q; returns an (N,) array.'''
        GF = type(points)
        vals = GF.Zeros(points.shape[0])
        for exp, c in self.terms.items():
            term = GF.Ones(points.shape[0]) * GF(c)
            for j, e in enumerate(exp):
                if e:
                    term = term * points[:, j] ** e
            vals = vals + term
        return vals

    def to_json(self):
        return [[list(e), c] for e, c in sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)]

    def __repr__(self):
        if not self.terms:
            return '0'
        parts = []
        for exp, c in sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True):
            mono = '*'.join(f'x{j + 1}' + (f'^{e}' if e > 1 else '') for j, e in enumerate(exp) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f'{c}*{mono}')
        return ' + '.join(parts)


@lru_cache(maxsize=None)
def fraction_field(p, nvars):
    '''sympy field F_p(x_1, ..., x_n); its `.ring` is R without the grading.'''
    names = ','.join(f'x{j + 1}' for j in range(nvars))
    Q = frac_field(names, SympyGF(p))[0]
    return Q


def to_sympy_poly(f):
    return fraction_field(f.p, f.nvars).ring.from_dict(dict(f.terms))


def from_sympy_poly(p, nvars, elem):
    K = elem.ring.domain
    return GradedPoly(p, nvars, {tuple(m): int(K.to_int(c)) for m, c in elem.items()})


class RatFunc:
    '''Element of Q = Frac(R), kept as a cancelled sympy fraction.

    `num` and `den` are normalized so that `den` is monic; equality and
    hashing use that form.
    '''
    __slots__ = ('p', 'nvars', 'elem')

    def __init__(self, num, den=None):
        if den is not None and den.is_zero:
            raise RealizationError('Zero denominator')
        Q = fraction_field(num.p, num.nvars)
        self.p, self.nvars = num.p, num.nvars
        if den is None:
            self.elem = Q.new(to_sympy_poly(num))
        else:
            self.elem = Q.new(to_sympy_poly(num), to_sympy_poly(den))

    @classmethod
    def from_elem(cls, p, nvars, elem):
        obj = cls.__new__(cls)
        obj.p, obj.nvars, obj.elem = p, nvars, elem
        return obj

    def _wrap(self, elem):
        return RatFunc.from_elem(self.p, self.nvars, elem)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, GradedPoly):
            return RatFunc(other)
        if isinstance(other, int):
            return RatFunc(GradedPoly.const(self.p, self.nvars, other))
        return NotImplemented

    def _normal(self):
        numer, denom = self.elem.numer, self.elem.denom
        lc = denom.LC
        return numer.quo_ground(lc), denom.quo_ground(lc)

    @property
    def num(self):
        return from_sympy_poly(self.p, self.nvars, self._normal()[0])

    @property
    def den(self):
        return from_sympy_poly(self.p, self.nvars, self._normal()[1])

    @property
    def is_zero(self):
        return not self.elem.numer

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.elem.numer * other.elem.denom == other.elem.numer * self.elem.denom

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.elem + other.elem)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.elem)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.elem - other.elem)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.elem * other.elem)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            raise RealizationError('Division by zero in Q')
        return self._wrap(self.elem / other.elem)

    def evaluate(self, points):
        return self.num.evaluate(points) / self.den.evaluate(points)

    def __repr__(self):
        num, den = self.num, self.den
        if den == 1:
            return repr(num)
        return f'({num!r})/({den!r})'


def q_nullspace(rows):
    '''Basis of {c : c @ rows == 0} over Q, as lists of RatFunc.'''
    if not rows:
        return []
    first = rows[0][0]
    p, nv = first.p, first.nvars
    Q = fraction_field(p, nv)
    m, n = len(rows), len(rows[0])
    if n == 0:
        one = Q.one
        return [[RatFunc.from_elem(p, nv, one if i == j else Q.zero) for i in range(m)] for j in range(m)]
    transposed = [[Q.new(to_sympy_poly(rows[i][j])) for i in range(m)] for j in range(n)]
    mat = DomainMatrix(transposed, (n, m), Q.to_domain())
    null = mat.nullspace()
    return [[RatFunc.from_elem(p, nv, c) for c in vec] for vec in null.to_list()]


def q_rank(rows):
    '''Rank over Q of a matrix of polynomials.'''
    if not rows or not rows[0]:
        return 0
    return len(rows) - len(q_nullspace(rows))


class PolyMatrix:
    '''Sparse matrix over R; row a is the image of basis element a.'''
    __slots__ = ('shape', 'p', 'nvars', 'entries')

    def __init__(self, shape, p, nvars, entries=None):
        self.shape = tuple(shape)
        self.p = p
        self.nvars = nvars
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    @classmethod
    def identity(cls, n, p, nvars):
        one = GradedPoly.const(p, nvars, 1)
        return cls((n, n), p, nvars, {(i, i): one for i in range(n)})

    @classmethod
    def zeros(cls, rows, cols, p, nvars):
        return cls((rows, cols), p, nvars)

    @classmethod
    def from_rows(cls, rows, p, nvars):
        entries = {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row)}
        return cls((len(rows), len(rows[0]) if rows else 0), p, nvars, entries)

    @classmethod
    def from_field(cls, mat, nvars):
        '''Constant matrix from a galois array over F_p.'''
        p = type(mat).characteristic
        entries = {(i, j): GradedPoly.const(p, nvars, int(mat[i, j]))
                   for i in range(mat.shape[0]) for j in range(mat.shape[1]) if mat[i, j]}
        return cls(mat.shape, p, nvars, entries)

    def zero_poly(self):
        return GradedPoly(self.p, self.nvars)

    def __getitem__(self, key):
        return self.entries.get(key) or self.zero_poly()

    @property
    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, frozenset(self.entries.items())))

    def __add__(self, other):
        entries = dict(self.entries)
        for k, v in other.entries.items():
            entries[k] = entries[k] + v if k in entries else v
        return PolyMatrix(self.shape, self.p, self.nvars, entries)

    def __neg__(self):
        return PolyMatrix(self.shape, self.p, self.nvars, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return PolyMatrix(self.shape, self.p, self.nvars, {k: v * c for k, v in self.entries.items()})

    def __matmul__(self, other):
        if self.shape[1] != other.shape[0]:
            raise RealizationError(f'Shape mismatch {self.shape} @ {other.shape}')
        by_row = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        entries = {}
        for (i, k), u in self.entries.items():
            for j, v in by_row.get(k, ()):
                key = (i, j)
                prod = u * v
                entries[key] = entries[key] + prod if key in entries else prod
        return PolyMatrix((self.shape[0], other.shape[1]), self.p, self.nvars, entries)

    def submatrix(self, rows, cols):
        rmap = {r: i for i, r in enumerate(rows)}
        cmap = {c: j for j, c in enumerate(cols)}
        entries = {(rmap[r], cmap[c]): v for (r, c), v in self.entries.items() if r in rmap and c in cmap}
        return PolyMatrix((len(rows), len(cols)), self.p, self.nvars, entries)

    def map_entries(self, fn):
        return PolyMatrix(self.shape, self.p, self.nvars, {k: fn(v) for k, v in self.entries.items()})

    def constant_part(self):
        GF = field(self.p)
        out = GF.Zeros(self.shape)
        for (i, j), v in self.entries.items():
            out[i, j] = v.constant_term()
        return out

    def evaluate(self, points):
        '''Values at every point: an (N, rows, cols) array over the points' field.'''
        GF = type(points)
        out = GF.Zeros((points.shape[0],) + self.shape)
        for (i, j), v in self.entries.items():
            out[:, i, j] = v.evaluate(points)
        return out

    def rows(self):
        return [[self[(i, j)] for j in range(self.shape[1])] for i in range(self.shape[0])]

    def to_json(self):
        return {
            'shape': list(self.shape),
            'entries': [[i, j, v.to_json()] for (i, j), v in sorted(self.entries.items())]
        }

    def __repr__(self):
        return f'PolyMatrix{self.shape}({len(self.entries)} nonzero)'


class Realization:
    '''The balanced realization of (W_aff, S_aff) on t = X^v tensor F_p.

    For a finite simple reflection the root is the coroot read in t and the
    coroot is the root read in t*; the affine generator uses -theta^v and
    -theta.
    '''

    def __init__(self, datum):
        self.datum = datum
        self.p = datum.prime
        self.nvars = datum.rank
        self.variables = [GradedPoly.var(self.p, self.nvars, j) for j in range(self.nvars)]
        self.roots = {}
        self.coroots = {}
        self.deltas = {}
        for s in datum.generators:
            if s:
                root_t = datum.simple_coroots[s - 1]
                coroot_t = datum.simple_roots[s - 1]
            else:
                root_t = tuple(-c for c in datum.highest_coroot)
                coroot_t = tuple(-c for c in datum.highest_root)
            self.roots[s] = GradedPoly.linear(self.p, root_t)
            self.coroots[s] = tuple(c % self.p for c in coroot_t)
            self.deltas[s] = self._make_delta(s)
        self._images = {}
        self._check()

    def _make_delta(self, s):
        coroot = self.coroots[s]
        j = next((j for j, c in enumerate(coroot) if c), None)
        if j is None:
            raise RealizationError(f'Coroot of s{s} vanishes mod {self.p}')
        c = pow(coroot[j], -1, self.p)
        return GradedPoly.var(self.p, self.nvars, j) * c

    def _check(self):
        for s in self.datum.generators:
            root = self.roots[s]
            if root.is_zero or not any(self.coroots[s]):
                raise RealizationError(f'Demazure surjectivity fails for s{s}')
            if self.pairing(root, self.coroots[s]) != 2 % self.p:
                raise RealizationError(f'<alpha_s, alpha_s^v> != 2 for s{s}')

    def pairing(self, linear, cov):
        return sum(linear.coefficient(tuple(int(i == j) for i in range(self.nvars))) * c
                   for j, c in enumerate(cov)) % self.p

    def _variable_images(self, w):
        '''Images w(x_j): the contragredient of w on X, read off M_{w^-1}.'''
        try:
            return self._images[w.perm]
        except KeyError:
            pass
        inv = w.inverse.matrix
        images = [GradedPoly.linear(self.p, inv[j]) for j in range(self.nvars)]
        self._images[w.perm] = images
        return images

    def act(self, x, f):
        '''x(f) for x in W or W_ext; translations act trivially.'''
        w = getattr(x, 'finite', x)
        if w.is_identity:
            return f
        return f.substitute(self._variable_images(w))

    def reflect(self, s, f):
        return self.act(self.datum.simple_reflection(s), f)

    def demazure(self, s, f):
        diff = f - self.reflect(s, f)
        if diff.is_zero:
            return diff
        return diff.exact_div(self.roots[s])

    def invariant_split(self, s, f):
        '''(a, b) with f = a + b * delta_s and a, b s-invariant.'''
        b = self.demazure(s, f)
        a = f - b * self.deltas[s]
        return a, b

    def is_invariant(self, s, f):
        return self.reflect(s, f) == f

    def one(self):
        return GradedPoly.const(self.p, self.nvars, 1)

    def zero(self):
        return GradedPoly(self.p, self.nvars)

    def slice_basis(self, degree):
        if degree < 0 or degree % 2:
            return []
        return [GradedPoly.monomial(self.p, e) for e in monomials(self.nvars, degree // 2)]

    def slice_dim(self, degree):
        return slice_dim(self.nvars, degree)

    def random_homogeneous(self, rng, degree):
        return GradedPoly(self.p, self.nvars, {
            e: int(rng.integers(0, self.p)) for e in monomials(self.nvars, degree // 2)})

    def random_poly(self, rng, max_degree):
        out = self.zero()
        for d in range(0, max_degree + 1, 2):
            out = out + self.random_homogeneous(rng, d)
        return out


class SamplePoints:
    '''A W-stable finite set of points of t* over F_q with q about `min_order`.

    Seeds are drawn off every root hyperplane; point (i, u) is u * z_i, so
    w * (u * z_i) is (i, u w).
    '''

    def __init__(self, realization, count=2, seed=0, min_order=10 ** 4, field_ext=None):
        self.realization = realization
        datum = realization.datum
        p = datum.prime
        self.degree = field_ext or extension_degree(p, min_order)
        self.GF = field(p, self.degree)
        rng = np.random.default_rng(seed)
        self.elements = list(datum.W)
        self.position = {w.perm: k for k, w in enumerate(self.elements)}
        coroots = [GradedPoly.linear(p, c) for c in datum.positive_coroots]
        seeds = []
        attempts = 0
        while len(seeds) < count:
            attempts += 1
            if attempts > 1000:
                raise RealizationError('Could not draw regular sample points')
            z = self.GF(rng.integers(0, self.GF.order, datum.rank))
            orbit = self.GF(np.array([self._move(w, z) for w in self.elements], dtype=int))
            if any(np.any(c.evaluate(orbit) == 0) for c in coroots):
                continue
            if len({tuple(int(v) for v in row) for row in orbit}) < len(self.elements):
                continue
            seeds.append(orbit)
        self.seed_count = count
        self.array = self.GF(np.vstack([np.asarray(o) for o in seeds]))

    def _move(self, w, z):
        inv = w.inverse.matrix
        GF = self.GF
        return [int(sum((GF(c % self.realization.p) * z[j] for j, c in enumerate(row)), GF(0)))
                for row in inv]

    def __len__(self):
        return self.array.shape[0]

    def index(self, seed_index, w):
        return seed_index * len(self.elements) + self.position[w.perm]

    def image(self, w, idx):
        '''Index of w * z_idx.'''
        w = getattr(w, 'finite', w)
        seed_index, k = divmod(idx, len(self.elements))
        u = self.elements[k]
        return self.index(seed_index, u * w)

    def to_json(self):
        return {'field': f'GF({self.GF.characteristic}^{self.degree})',
                'points': [[int(v) for v in row] for row in self.array]}
