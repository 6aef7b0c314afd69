# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pairing kernel for Gaussian matrix moments.

Mirrors ``matmodel.wick._corepy.pairing_sums`` exactly: enumerate the
(d-1)!! perfect matchings of the trace legs and histogram face counts of
sigma o alpha, for all matchings and for the connected ones.
"""

from libc.stdlib cimport calloc, free

__all__ = ["pairing_sums"]


cdef struct State:
    int d
    int n_traces
    int *sigma
    int *comp
    int *alpha
    int *visited
    int *find_root
    long long *full_counts
    long long *connected_counts


cdef void _record(State *st) nogil:
    cdef int i, x, start, cycles, a, b, classes, y
    for i in range(st.d):
        st.visited[i] = 0
    cycles = 0
    for start in range(st.d):
        if st.visited[start]:
            continue
        cycles += 1
        x = start
        while not st.visited[x]:
            st.visited[x] = 1
            x = st.sigma[st.alpha[x]]
    st.full_counts[cycles] += 1
    if st.n_traces == 1:
        st.connected_counts[cycles] += 1
        return
    for i in range(st.n_traces):
        st.find_root[i] = i
    classes = st.n_traces
    for x in range(st.d):
        y = st.alpha[x]
        if y < x:
            continue
        a = st.comp[x]
        while st.find_root[a] != a:
            a = st.find_root[a]
        b = st.comp[y]
        while st.find_root[b] != b:
            b = st.find_root[b]
        if a != b:
            st.find_root[b] = a
            classes -= 1
    if classes == 1:
        st.connected_counts[cycles] += 1


cdef void _backtrack(State *st, int start) nogil:
    cdef int x = start
    cdef int y
    while x < st.d and st.alpha[x] >= 0:
        x += 1
    if x == st.d:
        _record(st)
        return
    for y in range(x + 1, st.d):
        if st.alpha[y] < 0:
            st.alpha[x] = y
            st.alpha[y] = x
            _backtrack(st, x + 1)
            st.alpha[x] = -1
            st.alpha[y] = -1


def pairing_sums(parts):
    """Histogram face counts over all / connected pairings of the trace legs."""
    cdef list part_list = [int(p) for p in parts]
    cdef int d = 0
    cdef int n_traces = len(part_list)
    cdef int i, length, offset, pos, trace_index
    for i in range(n_traces):
        d += <int> part_list[i]
    if d % 2:
        raise ValueError("total degree must be even")
    if d == 0:
        if n_traces <= 1:
            return {0: 1}, {0: 1}
        return {0: 1}, {}

    cdef State st
    st.d = d
    st.n_traces = n_traces
    st.sigma = <int *> calloc(d, sizeof(int))
    st.comp = <int *> calloc(d, sizeof(int))
    st.alpha = <int *> calloc(d, sizeof(int))
    st.visited = <int *> calloc(d, sizeof(int))
    st.find_root = <int *> calloc(n_traces, sizeof(int))
    st.full_counts = <long long *> calloc(d + 1, sizeof(long long))
    st.connected_counts = <long long *> calloc(d + 1, sizeof(long long))
    if (st.sigma is NULL or st.comp is NULL or st.alpha is NULL
            or st.visited is NULL or st.find_root is NULL
            or st.full_counts is NULL or st.connected_counts is NULL):
        raise MemoryError()

    try:
        pos = 0
        for trace_index in range(n_traces):
            length = <int> part_list[trace_index]
            for offset in range(length):
                st.sigma[pos + offset] = pos + (offset + 1) % length
                st.comp[pos + offset] = trace_index
            pos += length
        for i in range(d):
            st.alpha[i] = -1

        with nogil:
            _backtrack(&st, 0)

        full = {}
        connected = {}
        for i in range(d + 1):
            if st.full_counts[i]:
                full[i] = st.full_counts[i]
            if st.connected_counts[i]:
                connected[i] = st.connected_counts[i]
        return full, connected
    finally:
        free(st.sigma)
        free(st.comp)
        free(st.alpha)
        free(st.visited)
        free(st.find_root)
        free(st.full_counts)
        free(st.connected_counts)
