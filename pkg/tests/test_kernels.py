import random

import pytest

from homlab import BudgetExceeded, HomSearchConfig, hom_count
from homlab._kernels import BACKEND, compiled_kernel, python_kernel
from homlab.generators import all_graphs, digraphs_of_order
from homlab.hom import _Problem
from homlab.named import complete, cycle, petersen

needs_compiled = pytest.mark.skipif(compiled_kernel is None, reason="compiled kernel not built")


def run_both(a, b, **kw):
    p = _Problem(a, b)
    args = (a.n, b.n, p.domains, p.arc_ptr, p.arc_dst, p.arc_tab, p.tables)
    return python_kernel.solve(*args, **kw), compiled_kernel.solve(*args, **kw)


@needs_compiled
class TestSolveParity:
    def test_counts_and_solutions(self):
        rnd = random.Random(1)
        graphs = all_graphs(5)
        for _ in range(150):
            a, b = rnd.choice(graphs), rnd.choice(graphs)
            for propagate in (0, 1):
                py, cy = run_both(a, b, propagate=propagate)
                assert py[0] == cy[0]
                assert sorted(map(tuple, py[1])) == sorted(map(tuple, cy[1]))

    def test_same_search_tree(self):
        a, b = petersen(), complete(3)
        py, cy = run_both(a, b, limit=1)
        assert list(py[1][0]) == list(cy[1][0])
        assert py[2] == cy[2]

    def test_injective_and_projection(self):
        for a in all_graphs(4):
            for b in (cycle(5), petersen()):
                py, cy = run_both(a, b, injective=True)
                assert py[0] == cy[0]
                if a.n >= 2:
                    py, cy = run_both(a, b, proj=[0, a.n - 1])
                    assert {(s[0], s[-1]) for s in py[1]} == {(s[0], s[-1]) for s in cy[1]}

    def test_digraphs(self):
        ds = digraphs_of_order(3)
        for a in ds:
            for b in ds:
                py, cy = run_both(a, b)
                assert py[0] == cy[0]

    def test_budget_flag(self):
        py, cy = run_both(petersen(), complete(3), budget=3)
        assert py[3] and cy[3]


class TestBackendSelection:
    def test_reported_backend(self):
        assert BACKEND in ("python", "cython")
        assert BACKEND == ("cython" if compiled_kernel is not None else "python")

    def test_budget_through_api(self, cfg):
        tight = HomSearchConfig(backend=cfg.backend, node_budget=2)
        with pytest.raises(BudgetExceeded):
            hom_count(petersen(), complete(3), tight)
        assert hom_count(petersen(), complete(3), cfg) == 120
