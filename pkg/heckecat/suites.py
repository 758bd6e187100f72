'''Verification suites run by `heckecat verify`.

Every subclass of SuiteBase registers itself in SUITES under `Meta.name`;
methods decorated with @check run in definition order and return
`(passed, details)`.
'''
from cached_property import cached_property
from sympy import Matrix

from .contrib import datum_from_config
from .decorators import check
from .exceptions import BudgetExceeded, HeckecatError, TorsionError, UnknownSuite
from .hecke import (
    V,
    V_INV,
    compare_with_oracle,
    p_canonical,
    sl2_engine_tilting,
    sl2_tilting_oracle,
)
from .logging import setup_logging
from .modrep import (
    borels_agree,
    build_baby_verma,
    hc_center_check,
    hc_center_separation,
    sample_points,
    splitting_fiber_rank,
    splitting_triple,
    translation_fiber,
    verify_matrix_algebra,
    wall_crossing_fiber,
)
from .realization import Realization
from .sbim import SoergelCategory
from .utils import make_rng
from .weyl import root_datum

info_logger, error_logger = setup_logging()

SUITES = {}


class SuiteMeta(type):

    _suites = SUITES

    def __new__(cls, name, bases, methods):
        kls = super(SuiteMeta, cls).__new__(cls, name, bases, methods)
        if name == 'SuiteBase':
            return kls
        try:
            suite_name = methods['Meta'].name
        except (KeyError, AttributeError):
            raise AttributeError(f'Suite class `{name}` ought to define `Meta.name`')
        kls._checks = [fn for fn in methods.values() if hasattr(fn, 'check_name')]
        SUITES[suite_name] = kls
        return kls


class SuiteBase(metaclass=SuiteMeta):

    def __init__(self, config):
        self.config = config
        self.rng = make_rng(config.seed)

    @cached_property
    def datum(self):
        return datum_from_config(self.config)

    def run(self):
        results = []
        for fn in self._checks:
            try:
                passed, details = fn(self)
            except BudgetExceeded:
                raise
            except HeckecatError as exc:
                error_logger.error('check raised', suite=self.Meta.name, check=fn.check_name,
                                   error=str(exc))
                passed, details = False, {'error': f'{type(exc).__name__}: {exc}'}
            info_logger.info('check', suite=self.Meta.name, check=fn.check_name, passed=bool(passed))
            results.append({'name': f'{self.Meta.name}.{fn.check_name}',
                            'passed': bool(passed), 'details': details})
        return results


class WeylSuite(SuiteBase):
    class Meta:
        name = 'weyl'

    @check('involutions')
    def involutions(self):
        datum = self.datum
        bad = [f's{s}' for s in datum.generators
               if not (datum.simple_reflection(s) * datum.simple_reflection(s)).is_identity
               or datum.length(datum.simple_reflection(s)) != 1]
        return not bad, {'failing': bad}

    @check('reduced_words')
    def reduced_words(self):
        datum = self.datum
        elements = datum.elements_up_to(min(self.config.max_len, 4))
        bad = [datum.name(x) for x in elements
               if datum.from_word(datum.reduced_word(x)) != x or len(datum.reduced_word(x)) != datum.length(x)]
        return not bad, {'elements': len(elements), 'failing': bad}

    @check('linkage_class')
    def linkage_class(self):
        datum = self.datum
        p = datum.prime
        zero = (0,) * datum.rank
        orbit = datum.linkage_class(zero, 4 * p, lower=0)
        details = {'size': len(orbit)}
        if datum.rank == 1 and datum.simple_roots == ((2,),):
            expected = {(2 * p * k + d,) for k in range(3) for d in (0, -2) if 0 <= 2 * p * k + d <= 4 * p}
            details['expected'] = sorted(c[0] for c in expected)
            details['orbit'] = sorted(c[0] for c in orbit)
            return orbit == expected, details
        return orbit <= datum.linkage_class_ext(zero, 4 * p, lower=0), details

    @check('stabilizer_of_minus_rho')
    def stabilizer_of_minus_rho(self):
        datum = self.datum
        stab = datum.dot_stabilizer(tuple(-c for c in datum.rho))
        return len(stab.finite_image) == len(datum.W), stab.to_json()

    @check('torsion')
    def torsion(self):
        try:
            root_datum('A2', 3)
        except TorsionError as exc:
            return True, {'A2, p=3': str(exc)}
        return False, {'A2, p=3': 'accepted'}

    @check('conjugate_affine_generator')
    def conjugate_affine_generator(self):
        datum = self.datum
        x, t = datum.conjugate_to_finite(0)
        ok = x * datum.simple_reflection(t) * x.inverse == datum.simple_reflection(0)
        return ok, {'x': x.to_json(), 't': f's{t}', 'length': datum.length(x)}

    @check('length_zero_elements')
    def length_zero_elements(self):
        datum = self.datum
        expected = abs(int(Matrix(datum.simple_roots).det()))
        found = len(datum.length_zero_elements)
        return found == expected, {'found': found, 'fundamental_group': expected}

    @check('bruhat_order')
    def bruhat_order(self):
        datum = self.datum
        elements = datum.elements_up_to(min(self.config.max_len, 3))
        bad = []
        for y in elements:
            if not datum.bruhat_le(datum.identity, y):
                bad.append(('e', datum.name(y)))
            for w in elements:
                if datum.bruhat_le(y, w) and datum.length(y) > datum.length(w):
                    bad.append((datum.name(y), datum.name(w)))
        return not bad, {'failing': bad}


class RealizationSuite(SuiteBase):
    class Meta:
        name = 'realization'

    @check('root_pairing')
    def root_pairing(self):
        R = Realization(self.datum)
        bad = [f's{s}' for s in self.datum.generators if R.reflect(s, R.roots[s]) != -R.roots[s]]
        return not bad, {'failing': bad}

    @check('demazure_surjectivity')
    def demazure_surjectivity(self):
        R = Realization(self.datum)
        bad = [f's{s}' for s in self.datum.generators if R.demazure(s, R.deltas[s]) != R.one()]
        return not bad, {'deltas': {f's{s}': repr(d) for s, d in R.deltas.items()}, 'failing': bad}

    @check('invariant_split')
    def invariant_split(self):
        R = Realization(self.datum)
        bad = []
        for s in self.datum.generators:
            f = R.random_poly(self.rng, 6)
            if f != R.reflect(s, R.reflect(s, f)):
                bad.append(f's{s}: not an involution')
            a, b = R.invariant_split(s, f)
            if a + b * R.deltas[s] != f or not (R.is_invariant(s, a) and R.is_invariant(s, b)):
                bad.append(f's{s}: split')
        return not bad, {'failing': bad}

    @check('sample_points')
    def sample_points(self):
        category = SoergelCategory(self.datum, self.config)
        R, pts = category.realization, category.points
        bad = 0
        for f in R.variables:
            values = f.evaluate(pts.array)
            for w in self.datum.W:
                moved = R.act(w, f).evaluate(pts.array)
                bad += sum(1 for idx in range(len(pts)) if moved[idx] != values[pts.image(w, idx)])
        return not bad, {'points': pts.to_json(), 'mismatches': bad}


class SbimSuite(SuiteBase):
    class Meta:
        name = 'sbim'

    def category(self):
        if not hasattr(self, '_category'):
            self._category = SoergelCategory(self.datum, self.config)
        return self._category

    @check('exact_sequences')
    def exact_sequences(self):
        category = self.category()
        reports = [category.verify_exact_sequences(s, min(self.config.degree_bound, 4))
                   for s in category.datum.generators]
        return all(r['exact'] for r in reports), {'generators': reports}

    @check('character_multiplicativity')
    def character_multiplicativity(self):
        category = self.category()
        datum = category.datum
        bad = []
        words = [datum.reduced_word(x) for x in datum.elements_up_to(min(self.config.max_len, 3))]
        for word in words:
            obj = category.bott_samelson(word)
            expected = category.hecke.one()
            for s in word:
                expected = expected * category.hecke.bs_character(s)
            category.std_character(obj)
            if obj.character != expected or category.hecke.epsilon(obj.character) != obj.grk:
                bad.append(obj.name)
        return not bad, {'words': len(words), 'failing': bad}

    @check('delta_products')
    def delta_products(self):
        category = self.category()
        datum = category.datum
        elements = [datum.simple_reflection(s) for s in datum.generators] + list(datum.length_zero_elements)
        for x in elements:
            for y in elements:
                category.delta_product_map(x, y)
        return True, {'pairs': len(elements) ** 2}

    @check('conjugation')
    def conjugation(self):
        category = self.category()
        x, t = category.datum.conjugate_to_finite(0)
        F = category.conjugation_isom(0, t, x)
        return True, {'x': x.to_json(), 't': f's{t}', 'morphism': F.to_json()}

    @check('hom_bound')
    def hom_bound(self):
        category = self.category()
        bad = []
        dims = {}
        for s in category.datum.generators:
            B = category.bs_gen(s)
            rows = category.graded_hom_dims(B, B, range(0, min(self.config.degree_bound, 4) + 1))
            dims[f's{s}'] = rows
            bad.extend((s, d) for d, row in rows.items() if row['dim'] > row['bound'])
        return not bad, {'dims': dims, 'failing': bad}

    @check('bs_squared')
    def bs_squared(self):
        category = self.category()
        out = {}
        ok = True
        for s in category.datum.generators:
            summands = category.decompose(category.tensor(category.bs_gen(s), category.bs_gen(s)))
            shifts = sorted(sm.shift for sm in summands)
            ok = ok and shifts == [-1, 1] and all(sm.obj is category.bs_gen(s) for sm in summands)
            out[f's{s}'] = [sm.to_json() for sm in summands]
        return ok, out


class HeckeSuite(SuiteBase):
    class Meta:
        name = 'hecke'

    def category(self):
        if not hasattr(self, '_category'):
            self._category = SoergelCategory(self.datum, self.config)
        return self._category

    @check('quadratic_relation')
    def quadratic_relation(self):
        algebra = self.category().hecke
        bad = []
        for s in algebra.datum.generators:
            H = algebra.generator(s)
            if H * H != H.scale(V_INV - V) + algebra.one():
                bad.append(f's{s}')
        return not bad, {'failing': bad}

    @check('kl_basis')
    def kl_basis(self):
        algebra = self.category().hecke
        datum = algebra.datum
        bad = []
        for w in datum.elements_up_to(min(self.config.max_len, 4)):
            b = algebra.kl_basis(w)
            if algebra.bar(b) != b or any(not c.in_positive_part() for y, c in b.items() if y != w):
                bad.append(datum.name(w))
        return not bad, {'failing': bad}

    @check('p_canonical_positivity')
    def p_canonical_positivity(self):
        category = self.category()
        algebra = category.hecke
        datum = category.datum
        rows = {}
        bad = []
        for w in datum.elements_up_to(min(self.config.max_len, 3)):
            pcan = p_canonical(category, w)
            expansion = algebra.kl_expansion(pcan)
            rows[datum.name(w)] = {datum.name(y): str(c) for y, c in expansion.items()}
            if algebra.bar(pcan) != pcan or not all(c.is_nonnegative() and c.is_self_dual
                                                   for c in expansion.values()):
                bad.append(datum.name(w))
        return not bad, {'kl_expansions': rows, 'failing': bad}

    @check('tilting_oracle')
    def tilting_oracle(self):
        category = self.category()
        if category.datum.rank != 1:
            return True, {'skipped': 'rank > 1'}
        p = category.datum.prime
        mismatches = compare_with_oracle(category, min(self.config.max_len, 3))
        bound = min(self.config.bound or 3 * p - 3, (self.config.max_len + 1) * p - 2)
        engine = sl2_engine_tilting(category, bound)
        mismatches += [{'weight': n, 'computed': got, 'oracle': sl2_tilting_oracle(n, p)}
                       for n, got in engine.items() if got != sl2_tilting_oracle(n, p)]
        return not mismatches, {'max_weight': bound, 'mismatches': mismatches}


class ModrepSuite(SuiteBase):
    class Meta:
        name = 'modrep'

    @property
    def degree(self):
        return max(self.config.field_ext or 2, 2)

    def _points(self, kind):
        count = max(self.config.samples, 2)
        return sample_points(self.config.p, self.degree, self.rng, count, kind)

    @check('baby_verma_dimension')
    def baby_verma_dimension(self):
        dims = []
        for pt in self._points('semisimple'):
            dims.extend(build_baby_verma(pt, borel).dim for borel in ('+', '-'))
        for pt in self._points('kostant'):
            dims.append(build_baby_verma(pt).dim)
        return all(d == self.config.p for d in dims), {'dims': dims}

    @check('matrix_algebra')
    def matrix_algebra(self):
        reports = [verify_matrix_algebra(pt) for pt in self._points('kostant') + self._points('semisimple')]
        return all(r['bijective'] for r in reports), {'points': reports}

    @check('borels_agree')
    def borels(self):
        points = self._points('semisimple')
        agree = [borels_agree(pt) for pt in points]
        return all(agree), {'points': [pt.to_json() for pt in points]}

    @check('harish_chandra_center')
    def harish_chandra_center(self):
        reports = [hc_center_check(pt) for pt in self._points('semisimple') + self._points('kostant')]
        return all(r['passed'] for r in reports), {'points': reports}

    @check('center_separation')
    def center_separation(self):
        report = hc_center_separation(self.config.p, self.degree, self.rng)
        return report['passed'], report

    @check('translation_fibers')
    def translation_fibers(self):
        reports = [translation_fiber(lam, pt) for pt in self._points('semisimple')
                   for lam in range(-1, min(self.config.p - 1, 2))]
        return all(r['passed'] for r in reports), {'fibers': reports}

    @check('wall_crossing')
    def wall_crossing(self):
        reports = [wall_crossing_fiber(w, 1, self.config.p, self.degree) for w in ('e', 's')]
        return all(r['passed'] for r in reports), {'fibers': reports}

    @check('splitting_fiber')
    def splitting_fiber(self):
        p = self.config.p
        reports = []
        for pt in self._points('semisimple'):
            lam, mu = (int(v) for v in self.rng.integers(-1, p - 1, 2))
            reports.append({'lambda': lam, 'mu': mu, 'point': pt.to_json(),
                            'dim': splitting_fiber_rank(lam, mu, splitting_triple(lam, mu, pt))})
        return all(r['dim'] == p * p for r in reports), {'fibers': reports, 'expected': p * p}


def run_suite(name, config):
    if name == 'all':
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise UnknownSuite(f'Unknown suite `{name}`, expected one of {sorted(SUITES) + ["all"]}')
    checks = []
    for suite_name in names:
        info_logger.info('running suite', suite=suite_name, p=config.p, seed=config.seed)
        checks.extend(SUITES[suite_name](config).run())
    return {
        'suite': name,
        'p': config.p,
        'seed': config.seed,
        'checks': checks,
        'passed': all(c['passed'] for c in checks),
    }
