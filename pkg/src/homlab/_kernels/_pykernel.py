"""Pure-Python hot kernels.

``solve`` is a binary CSP search over bitmask domains: variables are source
vertices, values are target vertices. Each directed arc ``x -> y`` carries a
table ``tab`` with ``tab[a]`` = mask of values of ``y`` compatible with
``x = a``. Higher-arity constraints (``hypers``) are checked once every
variable of the tuple is assigned; only this backend supports them.

Search: most-constrained variable first (ties: more arcs, then lower id),
values ascending; ``propagate=1`` maintains arc consistency, ``0`` only checks
against already assigned neighbours.

Projection mode: the first ``len(proj)`` levels assign the projection
variables; once a full solution is found the search unwinds to the last
projection level, so exactly one completion per distinct projection is
reported.
"""

from __future__ import annotations

BACKEND = "python"


def solve(n_vars, n_vals, domains, arc_ptr, arc_dst, arc_tab, tables, limit=0,
          collect=True, budget=10**7, propagate=1, injective=False, proj=None, hypers=None):
    """Return ``(count, solutions, nodes, exhausted)``."""
    return _Search(n_vars, n_vals, domains, arc_ptr, arc_dst, arc_tab, tables, limit,
                   collect, budget, propagate, injective, proj, hypers).run()


class _Search:
    def __init__(self, n_vars, n_vals, domains, arc_ptr, arc_dst, arc_tab, tables, limit,
                 collect, budget, propagate, injective, proj, hypers):
        self.n = n_vars
        self.dom0 = list(domains)
        self.arcs = [
            [(arc_dst[i], tables[arc_tab[i]]) for i in range(arc_ptr[v], arc_ptr[v + 1])]
            for v in range(n_vars)
        ]
        self.deg = [arc_ptr[v + 1] - arc_ptr[v] for v in range(n_vars)]
        self.limit = limit
        self.collect = collect
        self.budget = budget
        self.propagate = propagate
        self.injective = injective
        if proj is None:
            proj = range(n_vars)
        self.is_proj = [False] * n_vars
        for v in proj:
            self.is_proj[v] = True
        self.n_proj = sum(self.is_proj)
        self.hyper_of = [[] for _ in range(n_vars)]
        for h in hypers or ():
            for v in set(h[0]):
                self.hyper_of[v].append(h)
        self.assigned = [False] * n_vars
        self.val = [0] * n_vars
        self.count = 0
        self.nodes = 0
        self.exhausted = False
        self.solutions = []

    def run(self):
        dom = self.dom0
        if any(d == 0 for d in dom):
            return 0, [], 0, False
        if self.propagate and self.n:
            dom = list(dom)
            if not self._ac(dom, list(range(self.n))):
                return 0, [], 0, False
        self._search(dom, 0)
        return self.count, self.solutions, self.nodes, self.exhausted

    def _ac(self, dom, queue):
        inq = [False] * self.n
        for v in queue:
            inq[v] = True
        while queue:
            x = queue.pop()
            inq[x] = False
            dx = dom[x]
            for y, tab in self.arcs[x]:
                if dx & (dx - 1) == 0:
                    sup = tab[dx.bit_length() - 1]
                else:
                    sup = 0
                    m = dx
                    while m:
                        low = m & -m
                        sup |= tab[low.bit_length() - 1]
                        m ^= low
                nd = dom[y] & sup
                if nd != dom[y]:
                    if not nd:
                        return False
                    dom[y] = nd
                    if not inq[y]:
                        inq[y] = True
                        queue.append(y)
        return True

    def _select(self, dom, depth):
        want_proj = depth < self.n_proj
        best = -1
        best_key = None
        for v in range(self.n):
            if self.assigned[v] or self.is_proj[v] != want_proj:
                continue
            key = (bin(dom[v]).count("1"), -self.deg[v])
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def _hyper_ok(self, var):
        val = self.val
        assigned = self.assigned
        for vars_, allowed in self.hyper_of[var]:
            if all(assigned[x] for x in vars_):
                if tuple(val[x] for x in vars_) not in allowed:
                    return False
        return True

    def _search(self, dom, depth):
        if depth == self.n:
            self.count += 1
            if self.collect:
                self.solutions.append(tuple(self.val))
            if self.limit and self.count >= self.limit:
                return 1
            return 2 if self.n_proj < self.n else 0
        var = self._select(dom, depth)
        m = dom[var]
        used = 0
        if self.injective and not self.propagate:
            for v in range(self.n):
                if self.assigned[v]:
                    used |= 1 << self.val[v]
        while m:
            low = m & -m
            m ^= low
            a = low.bit_length() - 1
            self.nodes += 1
            if self.nodes > self.budget:
                self.exhausted = True
                return 1
            self.assigned[var] = True
            self.val[var] = a
            ok = True
            if self.propagate:
                nd = list(dom)
                nd[var] = low
                changed = [var]
                if self.injective:
                    for v in range(self.n):
                        if v != var and nd[v] & low:
                            nd[v] ^= low
                            if not nd[v]:
                                ok = False
                                break
                            changed.append(v)
                ok = ok and self._ac(nd, changed)
            else:
                nd = dom
                if used & low:
                    ok = False
                else:
                    for y, tab in self.arcs[var]:
                        if self.assigned[y] and not (tab[a] >> self.val[y]) & 1:
                            ok = False
                            break
            if ok and self.hyper_of[var]:
                ok = self._hyper_ok(var)
            if ok:
                r = self._search(nd, depth + 1)
                if r == 1:
                    self.assigned[var] = False
                    return 1
                if r == 2 and depth >= self.n_proj:
                    self.assigned[var] = False
                    return 2
            self.assigned[var] = False
        return 0


def _component(adj, mask):
    low = mask & -mask
    comp = low
    frontier = low
    while frontier:
        b = frontier & -frontier
        frontier ^= b
        nb = adj[b.bit_length() - 1] & mask & ~comp
        comp |= nb
        frontier |= nb
    return comp


def td_table(adj):
    """Tree-depth of every vertex subset, indexed by bitmask."""
    n = len(adj)
    size = 1 << n
    td = [0] * size
    for s in range(1, size):
        comp = _component(adj, s)
        if comp != s:
            a, b = td[comp], td[s ^ comp]
            td[s] = a if a > b else b
        else:
            best = n
            m = s
            while m:
                b = m & -m
                m ^= b
                d = td[s ^ b]
                if d < best:
                    best = d
            td[s] = best + 1
    return td


def td_mask(adj, mask, memo=None):
    """Tree-depth of the subgraph induced by ``mask`` (top-down, memoised)."""
    if memo is None:
        memo = {}
    return _td(adj, mask, memo)


def _td(adj, s, memo):
    if not s:
        return 0
    r = memo.get(s)
    if r is not None:
        return r
    comp = _component(adj, s)
    if comp != s:
        r = max(_td(adj, comp, memo), _td(adj, s ^ comp, memo))
    elif s & (s - 1) == 0:
        r = 1
    else:
        best = None
        m = s
        while m:
            b = m & -m
            m ^= b
            d = _td(adj, s ^ b, memo)
            if best is None or d < best:
                best = d
                if best == 1:
                    break
        r = best + 1
    memo[s] = r
    return r
