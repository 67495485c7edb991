# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels; same contract as ``_pykernel`` minus ``hypers``.

Targets are limited to 64 values (one machine word per domain).
"""

from libc.stdlib cimport malloc, calloc, free
from libc.string cimport memcpy
from libc.stdint cimport uint64_t, uint8_t

cdef extern from *:
    int __builtin_ctzll(unsigned long long)
    int __builtin_popcountll(unsigned long long)

BACKEND = "cython"
MAX_VALUES = 64


cdef class _Search:
    cdef int n, n_vals, n_proj, limit, propagate, injective, collect, exhausted
    cdef long long budget, nodes, count
    cdef int* arc_ptr
    cdef int* arc_dst
    cdef uint64_t* tabs
    cdef int* arc_off
    cdef uint64_t* doms          # (n + 1) levels of n words
    cdef uint8_t* assigned
    cdef uint8_t* is_proj
    cdef uint8_t* inq
    cdef int* val
    cdef int* queue
    cdef list solutions

    def __cinit__(self):
        self.arc_ptr = NULL
        self.arc_dst = NULL
        self.arc_off = NULL
        self.tabs = NULL
        self.doms = NULL
        self.assigned = NULL
        self.is_proj = NULL
        self.inq = NULL
        self.val = NULL
        self.queue = NULL

    def __dealloc__(self):
        free(self.arc_ptr)
        free(self.arc_dst)
        free(self.arc_off)
        free(self.tabs)
        free(self.doms)
        free(self.assigned)
        free(self.is_proj)
        free(self.inq)
        free(self.val)
        free(self.queue)

    def setup(self, int n_vars, int n_vals, domains, arc_ptr, arc_dst, arc_tab, tables,
              int limit, bint collect, long long budget, int propagate, bint injective, proj):
        cdef int i, j, v, n_arcs = len(arc_dst), n_tabs = len(tables)
        self.n = n_vars
        self.n_vals = n_vals
        self.limit = limit
        self.collect = collect
        self.budget = budget
        self.propagate = propagate
        self.injective = injective
        self.nodes = 0
        self.count = 0
        self.exhausted = 0
        self.solutions = []
        self.arc_ptr = <int*> malloc((n_vars + 1) * sizeof(int))
        self.arc_dst = <int*> malloc((n_arcs + 1) * sizeof(int))
        self.arc_off = <int*> malloc((n_arcs + 1) * sizeof(int))
        self.tabs = <uint64_t*> malloc((n_tabs * n_vals + 1) * sizeof(uint64_t))
        self.doms = <uint64_t*> malloc(((n_vars + 1) * n_vars + 1) * sizeof(uint64_t))
        self.assigned = <uint8_t*> calloc(n_vars + 1, 1)
        self.is_proj = <uint8_t*> calloc(n_vars + 1, 1)
        self.inq = <uint8_t*> calloc(n_vars + 1, 1)
        self.val = <int*> calloc(n_vars + 1, sizeof(int))
        self.queue = <int*> malloc((n_vars + 1) * sizeof(int))
        for i in range(n_vars + 1):
            self.arc_ptr[i] = arc_ptr[i]
        for i in range(n_arcs):
            self.arc_dst[i] = arc_dst[i]
            self.arc_off[i] = arc_tab[i] * n_vals
        for i in range(n_tabs):
            tab = tables[i]
            for j in range(n_vals):
                self.tabs[i * n_vals + j] = <uint64_t> tab[j]
        for v in range(n_vars):
            self.doms[v] = <uint64_t> domains[v]
        if proj is None:
            for v in range(n_vars):
                self.is_proj[v] = 1
            self.n_proj = n_vars
        else:
            self.n_proj = 0
            for v in proj:
                if not self.is_proj[v]:
                    self.is_proj[v] = 1
                    self.n_proj += 1

    cdef bint _ac(self, uint64_t* dom, int qlen):
        cdef int head = 0, x, y, i, a
        cdef uint64_t dx, sup, m, nd
        # queue is used as a ring of capacity n
        cdef int size = qlen
        while size > 0:
            x = self.queue[head]
            head += 1
            if head == self.n:
                head = 0
            size -= 1
            self.inq[x] = 0
            dx = dom[x]
            for i in range(self.arc_ptr[x], self.arc_ptr[x + 1]):
                y = self.arc_dst[i]
                if dx & (dx - 1) == 0:
                    sup = self.tabs[self.arc_off[i] + __builtin_ctzll(dx)]
                else:
                    sup = 0
                    m = dx
                    while m:
                        a = __builtin_ctzll(m)
                        m &= m - 1
                        sup |= self.tabs[self.arc_off[i] + a]
                nd = dom[y] & sup
                if nd != dom[y]:
                    if nd == 0:
                        self._clear_queue(head, size)
                        return False
                    dom[y] = nd
                    if not self.inq[y]:
                        self.inq[y] = 1
                        self.queue[(head + size) % self.n] = y
                        size += 1
        return True

    cdef void _clear_queue(self, int head, int size):
        while size > 0:
            self.inq[self.queue[head]] = 0
            head += 1
            if head == self.n:
                head = 0
            size -= 1

    cdef int _select(self, uint64_t* dom, int depth):
        cdef int v, best = -1, pc, deg, best_pc = 100, best_deg = -1
        cdef uint8_t want = 1 if depth < self.n_proj else 0
        for v in range(self.n):
            if self.assigned[v] or self.is_proj[v] != want:
                continue
            pc = __builtin_popcountll(dom[v])
            deg = self.arc_ptr[v + 1] - self.arc_ptr[v]
            if pc < best_pc or (pc == best_pc and deg > best_deg):
                best, best_pc, best_deg = v, pc, deg
        return best

    cdef int _search(self, int depth) except -1:
        cdef uint64_t* dom = self.doms + depth * self.n
        cdef uint64_t* nd = self.doms + (depth + 1) * self.n
        cdef uint64_t m, low, used = 0
        cdef int var, a, v, i, y, r, qlen
        cdef bint ok
        if depth == self.n:
            self.count += 1
            if self.collect:
                self.solutions.append(tuple([self.val[v] for v in range(self.n)]))
            if self.limit > 0 and self.count >= self.limit:
                return 1
            return 2 if self.n_proj < self.n else 0
        var = self._select(dom, depth)
        m = dom[var]
        if self.injective and not self.propagate:
            for v in range(self.n):
                if self.assigned[v]:
                    used |= (<uint64_t> 1) << self.val[v]
        while m:
            a = __builtin_ctzll(m)
            low = (<uint64_t> 1) << a
            m &= m - 1
            self.nodes += 1
            if self.nodes > self.budget:
                self.exhausted = 1
                return 1
            self.assigned[var] = 1
            self.val[var] = a
            ok = True
            if self.propagate:
                memcpy(nd, dom, self.n * sizeof(uint64_t))
                nd[var] = low
                qlen = 1
                self.queue[0] = var
                self.inq[var] = 1
                if self.injective:
                    for v in range(self.n):
                        if v != var and nd[v] & low:
                            nd[v] ^= low
                            if nd[v] == 0:
                                ok = False
                                break
                            if not self.inq[v]:
                                self.inq[v] = 1
                                self.queue[qlen] = v
                                qlen += 1
                if ok:
                    ok = self._ac(nd, qlen)
                else:
                    self._clear_queue(0, qlen)
            else:
                memcpy(nd, dom, self.n * sizeof(uint64_t))
                if used & low:
                    ok = False
                else:
                    for i in range(self.arc_ptr[var], self.arc_ptr[var + 1]):
                        y = self.arc_dst[i]
                        if self.assigned[y] and not ((self.tabs[self.arc_off[i] + a] >> self.val[y]) & 1):
                            ok = False
                            break
            if ok:
                r = self._search(depth + 1)
                if r == 1:
                    self.assigned[var] = 0
                    return 1
                if r == 2 and depth >= self.n_proj:
                    self.assigned[var] = 0
                    return 2
            self.assigned[var] = 0
        return 0

    def run(self):
        cdef int v
        for v in range(self.n):
            if self.doms[v] == 0:
                return 0, [], 0, False
        if self.propagate and self.n > 0:
            for v in range(self.n):
                self.queue[v] = v
                self.inq[v] = 1
            if not self._ac(self.doms, self.n):
                return 0, [], 0, False
        self._search(0)
        return self.count, self.solutions, self.nodes, bool(self.exhausted)


def solve(n_vars, n_vals, domains, arc_ptr, arc_dst, arc_tab, tables, limit=0,
          collect=True, budget=10**7, propagate=1, injective=False, proj=None, hypers=None):
    """Return ``(count, solutions, nodes, exhausted)``."""
    if hypers:
        raise ValueError("compiled kernel handles binary constraints only")
    if n_vals > MAX_VALUES:
        raise ValueError("compiled kernel handles at most 64 target values")
    s = _Search()
    s.setup(n_vars, n_vals, domains, arc_ptr, arc_dst, arc_tab, tables, limit, collect,
            min(budget, 2**62), propagate, injective, proj)
    return s.run()


cdef uint64_t _component(uint64_t* adj, uint64_t mask):
    cdef uint64_t low = mask & (~mask + 1)
    cdef uint64_t comp = low, frontier = low, b, nb
    while frontier:
        b = frontier & (~frontier + 1)
        frontier ^= b
        nb = adj[__builtin_ctzll(b)] & mask & ~comp
        comp |= nb
        frontier |= nb
    return comp


def td_table(adj):
    """Tree-depth of every vertex subset, indexed by bitmask (n <= 24)."""
    cdef int n = len(adj), i
    if n > 24:
        raise ValueError("td_table limited to 24 vertices")
    cdef uint64_t size = (<uint64_t> 1) << n, s, comp, m, b
    cdef uint64_t cadj[64]
    cdef uint8_t a, bb, best, d
    for i in range(n):
        cadj[i] = <uint64_t> adj[i]
    cdef uint8_t* td = <uint8_t*> calloc(size, 1)
    try:
        for s in range(1, size):
            comp = _component(cadj, s)
            if comp != s:
                a = td[comp]
                bb = td[s ^ comp]
                td[s] = a if a > bb else bb
            else:
                best = 255
                m = s
                while m:
                    b = m & (~m + 1)
                    m ^= b
                    d = td[s ^ b]
                    if d < best:
                        best = d
                td[s] = best + 1
        return [td[s] for s in range(size)]
    finally:
        free(td)


cdef int _td(uint64_t* adj, uint64_t s, dict memo) except -1:
    cdef uint64_t comp, m, b
    cdef int r, d, best
    if s == 0:
        return 0
    cached = memo.get(s)
    if cached is not None:
        return cached
    comp = _component(adj, s)
    if comp != s:
        r = _td(adj, comp, memo)
        d = _td(adj, s ^ comp, memo)
        if d > r:
            r = d
    elif s & (s - 1) == 0:
        r = 1
    else:
        best = -1
        m = s
        while m:
            b = m & (~m + 1)
            m ^= b
            d = _td(adj, s ^ b, memo)
            if best < 0 or d < best:
                best = d
                if best == 1:
                    break
        r = best + 1
    memo[s] = r
    return r


def td_mask(adj, mask, memo=None):
    """Tree-depth of the subgraph induced by ``mask`` (top-down, memoised)."""
    cdef int n = len(adj), i
    if n > 64:
        raise ValueError("td_mask limited to 64 vertices")
    cdef uint64_t cadj[64]
    for i in range(n):
        cadj[i] = <uint64_t> adj[i]
    if memo is None:
        memo = {}
    return _td(cadj, <uint64_t> mask, memo)
