import json
import math
import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacsearch.errors import FamilyParseError, OutOfCalibratedRange
from jacsearch.ntheory import factorint
from jacsearch.oracle.order import naive_lpoly
from jacsearch.search import (SearchConfig, SearchRecord, choose_params, config_from_text,
                              distribution_experiment, format_family, is_root_easy,
                              parse_config_text, parse_family, partition, read_records,
                              run_search, search_to_file, sigma, tuning_row, wilson_interval)
from jacsearch.search.pipeline import curve_for
from jacsearch.search.records import stable_view
from jacsearch.search.semismooth import log_rho_asymptotic, rho

from .conftest import P50

# Search parameter table, printed rows: n, w, u, 1/sigma, B, E, S, 16S (millions)
TABLE3 = [
    (100, 5, 5.38, 195, .39, .60, .25, 4),
    (110, 5, 5.57, 309, .88, 1.3, .57, 9),
    (120, 5, 5.75, 484, 1.9, 2.9, 1.2, 20),
    (130, 6, 5.92, 745, 4.1, 6.3, 2.5, 40),
    (140, 6, 6.01, 936, 10, 16, 6.4, 102),
    (150, 6, 6.25, 1765, 17, 25, 10, 166),
    (160, 6, 6.40, 2640, 34, 50, 21, 333),
    (170, 7, 6.55, 3972, 65, 97, 39, 625),
    (180, 7, 6.70, 6012, 122, 183, 74, 1176),
    (190, 7, 6.84, 8897, 230, 344, 138, 2212),
    (200, 7, 7.01, 14355, 388, 579, 233, 3728),
    (180, 6, 7.01, 14355, 54, 80, 33, 532),
    (190, 7, 7.14, 20943, 102, 153, 62, 985),
    (200, 7, 7.27, 30553, 191, 286, 115, 1838),
]

SIX_FAMILIES = [
    "x^5 + 2x^3 + 7x^2 + x + t",
    "x^7 + 2x^5 + 7x^3 + 5x^2 + 3x + t",
    "x^5 + x + t",
    "x^5 + 2x^3 + 7x^2 + t*x + 1",
]


def sig2(x):
    return float(f"{x:.2g}")


# semismooth probabilities -----------------------------------------------------

def test_rho_known_values():
    # rho(u) = 1 - log u on [1, 2]; rho(2) = 1 - log 2
    for u in (1.0, 1.3, 1.7, 2.0):
        assert rho(u) == pytest.approx(1 - math.log(u), rel=1e-9)
    # rho(3) = 1 - log 3 + int_2^3 log(t - 1) / t dt, closed form by quadrature here
    from scipy import integrate
    tail, _ = integrate.quad(lambda t: math.log(t - 1) / t, 2, 3)
    assert rho(3.0) == pytest.approx(1 - math.log(3) + tail, rel=1e-8)


# standard tabulated values of Dickman's function
@pytest.mark.parametrize("u,value", [(3, 4.8608388291e-2), (4, 4.9109256478e-3),
                                     (5, 3.5472470045e-4), (6, 1.9649696353e-5),
                                     (10, 2.7701718377e-11)])
def test_rho_tabulated(u, value):
    assert rho(u) == pytest.approx(value, rel=1e-6)


def test_rho_asymptotic_order():
    # the leading-order estimate is crude but should stay within a factor e^3
    for u in (6.0, 8.0, 10.0):
        assert abs(math.log(rho(u)) - log_rho_asymptotic(u)) < 3


@pytest.mark.parametrize("u,inv", [(5.38, 195), (5.75, 484), (6.25, 1765), (6.70, 6012),
                                   (7.01, 14355)])
def test_inverse_sigma_calibration(u, inv):
    assert 1 / sigma(u) == pytest.approx(inv, rel=0.15)


@pytest.mark.parametrize("row", TABLE3, ids=lambda r: f"n{r[0]}u{r[2]}")
def test_inverse_sigma_every_row_close(row):
    assert 1 / sigma(row[2]) == pytest.approx(row[3], rel=0.01)


def test_sigma_range_errors():
    with pytest.raises(ValueError):
        sigma(1.0)
    with pytest.raises(OutOfCalibratedRange):
        sigma(13.0)


@given(st.floats(1.5, 11.0), st.floats(0.01, 0.5))
def test_sigma_decreasing(u, du):
    assert sigma(u + du) <= sigma(u) + 1e-9


# tuning -----------------------------------------------------------------------

@pytest.mark.parametrize("row", TABLE3, ids=lambda r: f"n{r[0]}u{r[2]}")
def test_tuning_columns_match_printed(row):
    n, w, u, _, B, E, S, mem = row
    r = tuning_row(n, u, w)
    assert sig2(r.B / 1e6) == pytest.approx(sig2(B), rel=0.03)
    assert r.S / 1e6 == pytest.approx(S, rel=0.01) or sig2(r.S / 1e6) == sig2(S)
    assert r.memory / 1e6 == pytest.approx(mem, rel=0.03, abs=0.6)
    # printed E lies between B / log 2 and the windowed exponentiation count
    assert r.E / 1e6 <= E * 1.01 and E <= r.e_windowed / 1e6 * 1.02


@pytest.mark.parametrize("row", TABLE3[:11], ids=lambda r: f"n{r[0]}")
def test_chosen_u_near_printed(row):
    n, w, u = row[:3]
    choice = choose_params(n)
    assert choice.w == w
    assert abs(choice.u - u) <= 0.1


@pytest.mark.parametrize("n,u", [(100, 5.38), (110, 5.57), (120, 5.75), (130, 5.92),
                                 (150, 6.25), (160, 6.40), (170, 6.55), (180, 6.70),
                                 (190, 6.84)])
def test_chosen_u_exact_rows(n, u):
    assert choose_params(n).u == u


@pytest.mark.parametrize("n", [100, 150, 200])
def test_space_saver(n):
    c = choose_params(n)
    assert c.space_saver.memory <= c.row.memory / 2
    assert c.space_cost_ratio <= 1.06
    assert c.space_saver.u > c.u


def test_choice_is_grid_minimum():
    c = choose_params(120)
    for du in (-0.05, -0.01, 0.01, 0.05):
        assert tuning_row(120, c.u + du, c.w).cost >= c.cost * (1 - 1e-9)


def test_tuning_range():
    with pytest.raises(ValueError):
        choose_params(47)
    with pytest.raises(ValueError):
        choose_params(257)


# families ---------------------------------------------------------------------

@pytest.mark.parametrize("text", SIX_FAMILIES)
def test_family_round_trip(text):
    fam = parse_family(text)
    assert parse_family(format_family(fam)) == fam


def test_family_values():
    fam = parse_family("y^2 = x^5 + 2x^3 + 7x^2 + x + t")
    assert fam.at(5) == [5, 1, 7, 2, 0, 1]
    assert fam.genus == 2
    fam = parse_family("x^7 - 3*t*x^2 + 1")
    assert fam.at(2) == [1, 0, -6, 0, 0, 0, 0, 1]
    assert fam.genus == 3


@given(st.lists(st.integers(-50, 50), min_size=5, max_size=5),
       st.integers(0, 4), st.integers(-9, 9).filter(bool), st.sampled_from([5, 7]))
def test_family_round_trip_random(low, idx, mult, degree):
    from jacsearch.search.family import Family
    coeffs = tuple(low + [0] * (degree - 5) + [1])
    fam = Family(coeffs, idx, mult)
    assert parse_family(format_family(fam)) == fam


@pytest.mark.parametrize("text,pos", [
    ("x^5 + x + q", 10),
    ("x^5 + t + t*x", 10),
    ("x^5 + x", 7),
    ("2x^5 + t", 8),
    ("x^4 + t", 7),
    ("x^5 + + t", 6),
])
def test_family_parse_errors(text, pos):
    with pytest.raises(FamilyParseError) as info:
        parse_family(text)
    assert info.value.position == pos


# configuration and records ----------------------------------------------------

CONFIG_TEXT = """
# genus 3 family
p = 2^50-27          # prime expression
family = x^7 + 2x^5 + 7x^3 + 5x^2 + 3x + t
t_from = 640
t-to = 650
u = 6.25
smith = false
targets = J
"""


def test_config_parse():
    cfg = config_from_text(CONFIG_TEXT)
    assert cfg.p == P50
    assert cfg.genus == 3
    assert list(cfg.t_values) == list(range(640, 651))
    assert cfg.n == 150
    assert cfg.bound == round(2 ** (150 / 6.25))
    assert cfg.smith is False
    assert cfg.search_twist


def test_config_text_round_trip():
    cfg = config_from_text(CONFIG_TEXT)
    assert config_from_text(cfg.to_text()) == cfg


def test_config_errors():
    with pytest.raises(ValueError, match="unknown key"):
        parse_config_text("colour = red")
    with pytest.raises(ValueError, match="line 2"):
        parse_config_text("p = 7\nsmith = maybe")
    with pytest.raises(ValueError, match="give u or B"):
        config_from_text("p = 101\nfamily = x^5 + t")
    with pytest.raises(ValueError, match="missing"):
        config_from_text("u = 3")
    with pytest.raises(ValueError):
        config_from_text("p = 101\nfamily = x^5+t\nu = 3\ntargets = J_9/1")


def test_config_hash_ignores_scheduling():
    cfg = config_from_text(CONFIG_TEXT)
    assert cfg.with_range(0, 5, workers=4, batch=8).config_hash == cfg.config_hash
    assert SearchConfig(p=P50, family=cfg.family, u=6.3, smith=False).config_hash != \
        cfg.config_hash


def _small_cfg(**kw):
    base = dict(p=32003, family="x^5 + 2x^3 + 7x^2 + x + t", t_from=0, t_to=29, u=3.0)
    base.update(kw)
    return SearchConfig(**base)


@pytest.fixture(scope="module")
def small_records():
    return list(run_search(_small_cfg()))


def test_record_json_round_trip(small_records):
    for rec in small_records:
        obj = json.loads(rec.to_line())
        again = SearchRecord.from_json(obj)
        assert again.to_json() == obj
        assert set(obj) >= {"t", "p", "k", "genus", "f", "status", "lambda", "order", "lpoly",
                            "derived", "security", "ops", "ms", "config_hash"}


def test_record_status_checked():
    with pytest.raises(ValueError):
        SearchRecord(t=0, p=7, k=1, genus=2, f=[], status="maybe", config_hash="")


def test_torn_tail_ignored(tmp_path, small_records):
    path = tmp_path / "r.jsonl"
    lines = [r.to_line() for r in small_records[:3]]
    path.write_text("".join(lines) + lines[0][:17])
    assert len(read_records(path)) == 3


def test_wilson_interval():
    lo, hi = wilson_interval(48, 100)
    # closed form of the score interval
    z = 1.959963984540054
    n, ph = 100, 0.48
    centre = (ph + z * z / (2 * n)) / (1 + z * z / n)
    half = z * math.sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / (1 + z * z / n)
    assert lo == pytest.approx(centre - half, abs=1e-9)
    assert hi == pytest.approx(centre + half, abs=1e-9)
    assert wilson_interval(0, 0) == (0.0, 1.0)


# pipeline ---------------------------------------------------------------------

def test_pipeline_matches_oracle():
    cfg = _small_cfg(t_to=59)
    recs = list(run_search(cfg))
    assert [r.t for r in recs] == list(range(60))
    statuses = Counter(r.status for r in recs)
    assert statuses["error"] == 0
    for r in recs:
        if r.status == "success":
            P = naive_lpoly(curve_for(cfg, r.t))
            assert list(r.lpoly.coeffs) == list(P.coeffs)
            assert r.order == P(1)
    # one-sided success rate check against the semismooth estimate
    rate = statuses["success"] / len(recs)
    assert rate >= 0.6 * sigma(cfg.n / math.log2(cfg.bound))


def test_pipeline_twist_target():
    cfg = _small_cfg(t_to=9, targets=("J_twist", "J_3/1"))
    assert not cfg.search_twist
    for r in run_search(cfg):
        if r.status == "success":
            P = naive_lpoly(curve_for(cfg, r.t))
            assert list(r.lpoly.coeffs) == list(P.coeffs)
            labels = [d["label"] if isinstance(d, dict) else d.label for d in r.derived]
            assert labels == ["J_twist", "J_3/1"]


def test_pipeline_filters():
    # x^5 + t has repeated roots only when t = 0
    cfg = _small_cfg(family="x^5 + t", t_to=0)
    (rec,) = run_search(cfg)
    assert rec.status == "rejected-filter" and rec.detail == "singular"
    cfg = _small_cfg(t_to=19, odd_only=True)
    for r in run_search(cfg):
        if r.status == "success":
            assert r.order % 2 == 1


def test_empty_range():
    assert list(run_search(_small_cfg(t_from=5, t_to=4))) == []


def test_deterministic(small_records):
    again = [stable_view(r.to_json()) for r in run_search(_small_cfg())]
    assert again == [stable_view(r.to_json()) for r in small_records]


def test_worker_count_invariance(small_records):
    cfg = _small_cfg(workers=2, batch=4)
    got = [stable_view(r.to_json()) for r in run_search(cfg)]
    assert got == [stable_view(r.to_json()) for r in small_records]


def test_partition_shapes():
    cfg = _small_cfg(t_to=7999)
    parts = partition(cfg, 8)
    assert [(c.t_from, c.t_to) for c in parts] == [(i * 1000, i * 1000 + 999) for i in range(8)]
    assert partition(cfg, 1) == [cfg]
    with pytest.raises(ValueError):
        partition(cfg, 0)


def test_partition_union(small_records):
    whole = {json.dumps(stable_view(r.to_json()), sort_keys=True) for r in small_records}
    union = set()
    for part in partition(_small_cfg(), 4):
        for r in run_search(part):
            union.add(json.dumps(stable_view(r.to_json()), sort_keys=True))
    assert union == whole


def test_resume_skips_done(tmp_path, small_records):
    path = str(tmp_path / "out.jsonl")
    cfg = _small_cfg(out=path)
    lines = [r.to_line() for r in small_records]
    # a killed writer: twelve full records and a torn thirteenth
    with open(path, "w") as fh:
        fh.write("".join(lines[:12]) + lines[12][:40])
    written = search_to_file(cfg.with_range(0, 29, resume=True))
    assert written == 18
    got = [stable_view(r) for r in read_records(path)]
    assert got == [stable_view(r.to_json()) for r in small_records]


def test_stop_flag_halts():
    calls = iter(range(100))
    recs = list(run_search(_small_cfg(), stop=lambda: next(calls) >= 3))
    assert [r.t for r in recs] == [0, 1, 2]


# experiment -------------------------------------------------------------------

def _easy_by_definition(N, u):
    # N / gcd(N, E) <= B^2 with E the product of maximal prime powers <= B = N^(1/u),
    # evaluated in exact rational logarithm-free form
    u = Fraction(u).limit_denominator(1000)
    B_pow = lambda x: x ** u.numerator <= N ** u.denominator  # x <= B
    E = 1
    for p in factorint(N):
        if B_pow(p):
            pk = p
            while B_pow(pk * p):
                pk *= p
            E *= pk
    rest = N // math.gcd(N, E)
    return rest ** u.numerator <= N ** (2 * u.denominator)


@given(st.integers(2, 10 ** 12), st.sampled_from([2.0, 2.5, 3.0, 4.0, 5.4]))
@settings(max_examples=300)
def test_root_easy_definition(N, u):
    assert is_root_easy(N, u) == _easy_by_definition(N, u)


def test_root_easy_examples():
    # only 2^10 <= B is removed, leaving 2^30 > B^2
    assert not is_root_easy(2 ** 40, 4.0)
    assert is_root_easy(2 ** 40, 2.0)
    assert is_root_easy(3 ** 6 * 5 ** 4 * 7 ** 3 * 11 ** 2 * 13 ** 2 * 101 * 103, 4.0)
    assert not is_root_easy(1000003 * 1000033, 3.0)
    # any N is N^(1/2)-easy
    rng = random.Random(3)
    assert all(is_root_easy(rng.randrange(2, 10 ** 15), 2.0) for _ in range(50))


def test_small_experiment():
    res = distribution_experiment(sample_size=60, us=(2.0, 3.0), n=40, seed=1)
    assert res.rows[0].pr_a == 1.0
    assert 0 < res.rows[1].pr_a < 1
    for s in res.samples:
        assert is_root_easy(s.order, 2.0)
    out = res.to_json()
    assert out["rows"][0]["curves"] == 60
    assert "random integer rate" in res.table()
