"""Acceptance gate: the twelve headline criteria, each within its time limit.

Every criterion prints one PASS/FAIL line, repeated in the terminal summary.
"""
import functools
import time

from ccfc.verify import run_verify

RESULTS: dict[int, str] = {}


def criterion(number: int, title: str, limit: float):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            start = time.perf_counter()
            ok, detail = False, ""
            try:
                detail = fn()
                elapsed = time.perf_counter() - start
                assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
                ok = True
            finally:
                elapsed = time.perf_counter() - start
                line = (f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}"
                        f"  [{elapsed:.2f}s / {limit:g}s]  {detail or ''}")
                RESULTS[number] = line
                print(line)
        return run
    return wrap


def _run(suite, **params):
    rep = run_verify(suite, params)
    assert rep.cases_total > 0
    assert rep.passed, f"{suite}: {rep.cases_total - rep.cases_passed} failures, first {rep.to_dict()['failures'][:2]}"
    return rep


@criterion(1, "cycle precoloring criterion, exhaustive for k in {5,7}", 5)
def test_criterion_01():
    rep = _run("lemma-2.1", k=[5, 7])
    assert rep.cases_total == 5 ** 4 + 7 ** 4
    return f"{rep.cases_passed}/{rep.cases_total} cases"


@criterion(2, "replacement preserves C_k-colorability on 50 random graphs x 4 (d,k)", 120)
def test_criterion_02():
    rep = _run("prop-2.2", graphs=50, max_vertices=8, pairs=[[1, 5], [2, 5], [2, 7], [3, 7]])
    return f"{rep.cases_passed}/{rep.cases_total} checks, {rep.notes['sat_instances']} SAT instances"


@criterion(3, "W_5 and H_5 not C_5-colorable; girth(H_5)=5, spectrum(H_5,13)={5}", 300)
def test_criterion_03():
    rep = _run("prop-2.4", p=5)
    return f"W_5 {rep.notes['W_nodes']} nodes, H_5 {rep.notes['H_nodes']} nodes"


@criterion(4, "nonprime gadget (3,3,10) not C_9-colorable, girth 9", 600)
def test_criterion_04():
    rep = _run("prop-2.3", s=3, t=3, m=10)
    return f"{rep.notes['nodes_explored']} nodes"


@criterion(5, "necklace propagation equals brute-force reachable sets, p in {5,7}", 120)
def test_criterion_05():
    rep = _run("lemma-3.2", p=[5, 7], specs=200, max_links=8)
    return f"{rep.cases_passed}/{rep.cases_total} checks"


@criterion(6, "crowns and necklaces meeting the anchor condition extend all 125 precolorings", 600)
def test_criterion_06():
    rep = _run("lemma-3.3", p=5, t=3)
    return f"{len(rep.notes['profiles'])} profiles, {rep.notes['precolorings_checked']} precolorings"


@criterion(7, "path bounds and the cycle overlap criterion agree with the oracle, k in {5,7}", 600)
def test_criterion_07():
    a = _run("lemma-4.1", k=[5, 7])
    b = _run("lemma-4.2", k=[5, 7])
    return f"{a.cases_total + b.cases_total} checks"


@criterion(8, "M, N integral with 0 <= M <= N for all odd k <= 31", 10)
def test_criterion_08():
    rep = _run("prop-4.4", k_max=31)
    assert rep.notes["parity_table_mismatches"] == 0
    return f"{rep.cases_total} cases"


@criterion(9, "constructive necklace extension at k=5, <= 3 links, all end-set pairs", 900)
def test_criterion_09():
    a = _run("lemma-4.3-4.5", k=5, max_links=3)
    b = _run("cor-4.7", k=5, max_links=3)
    return (f"{a.cases_total + b.cases_total} checks; {a.notes['overlap_classes_extendable_outside_interval']}"
            " overlap classes colorable outside the interval")


@criterion(10, "bull extension for (t,s) in {(1,4),(1,5),(2,3),(2,4)}, 5% oracle sample", 1200)
def test_criterion_10():
    rep = _run("lemma-4.6", k=5, pairs=[[1, 4], [1, 5], [2, 3], [2, 4]], sample=0.05)
    assert rep.notes["oracle_runs"] > 0
    return f"{rep.notes['precolorings_extended']} precolorings extended, {rep.notes['oracle_runs']} oracle runs"


@criterion(11, "odd-girth gadget (k=5,t=3) has no fractional coloring; y-sets propagate", 1200)
def test_criterion_11():
    rep = _run("sec5-odd", k=5, t=3)
    return f"{rep.notes['nodes_explored']} nodes"


@criterion(12, "five-color pipeline on K_4; F has girth 5 and spectrum(F,17)={5}", 300)
def test_criterion_12():
    rep = _run("prop-2.6", graph="K4")
    return f"{rep.cases_total} checks"
