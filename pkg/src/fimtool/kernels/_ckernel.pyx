# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the ball sweep and the membership search.

Same contracts as the pure-Python kernels; positions inside a window are
stored one byte per (state, position) instead of one bit.
"""

from libc.stdlib cimport calloc, free, malloc, realloc
from libc.string cimport memset


cdef int _csr(int m, edges, int **starts, int **steps, int **targets) except -1:
    cdef int e = len(edges)
    cdef int *s = <int *> calloc(m + 1, sizeof(int))
    cdef int *st = <int *> malloc((e + 1) * sizeof(int))
    cdef int *tg = <int *> malloc((e + 1) * sizeof(int))
    cdef int *fill = <int *> calloc(m + 1, sizeof(int))
    if s == NULL or st == NULL or tg == NULL or fill == NULL:
        free(s); free(st); free(tg); free(fill)
        raise MemoryError()
    cdef int p, q, step, k
    for p, step, q in edges:
        s[p + 1] += 1
    for p in range(m):
        s[p + 1] += s[p]
    for p, step, q in edges:
        k = s[p] + fill[p]
        fill[p] += 1
        st[k] = step
        tg[k] = q
    free(fill)
    starts[0] = s
    steps[0] = st
    targets[0] = tg
    return 0


def ball_sweep(int m, initial, terminal, edges, long lam_min, long rho_max, long norm_max,
               long pi_lo, long pi_hi, long gap_max):
    result = {}
    if m == 0 or not initial or lam_min > 0 or rho_max < 0 or norm_max < 0:
        return result
    cdef int *starts
    cdef int *steps
    cdef int *targets
    _csr(m, edges, &starts, &steps, &targets)
    cdef unsigned char *is_terminal = <unsigned char *> calloc(m, 1)
    for t in terminal:
        is_terminal[<int> t] = 1

    cdef long span = 0, lo, hi, nwin, nwin_next, lo_first, lo_first_next, lo_last, lo_last_next
    cdef long width, width_next, w, idx, pos, pos2, keep_lo, keep_hi
    cdef int q, r, e, top, p
    cdef unsigned char *cur
    cdef unsigned char *nxt
    cdef unsigned char *win
    cdef unsigned char *alive
    cdef unsigned char *alive_next
    cdef long *stack
    cdef bint grow, any_bit
    cdef unsigned char *packed = NULL
    cdef long sp

    lo_first = 0
    lo_last = 0
    nwin = 1
    width = 1
    cur = <unsigned char *> calloc(m, 1)
    alive = <unsigned char *> calloc(1, 1)
    alive[0] = 1
    for q0 in initial:
        cur[<int> q0] = 1
    stack = <long *> malloc(m * sizeof(long))
    try:
        while nwin > 0:
            width = span + 1
            stack = <long *> realloc_or_raise(stack, m * width * sizeof(long))
            packed = <unsigned char *> realloc_or_raise(packed, (width + 7) // 8 + 1)
            lo_first_next = max(lam_min, -(span + 1))
            lo_last_next = min(0, rho_max - (span + 1))
            grow = span + 1 <= norm_max and lo_first_next <= lo_last_next
            if grow:
                nwin_next = lo_last_next - lo_first_next + 1
                width_next = span + 2
                nxt = <unsigned char *> calloc(nwin_next * m * width_next, 1)
                alive_next = <unsigned char *> calloc(nwin_next, 1)
            else:
                nwin_next = 0
                width_next = span + 2
                nxt = NULL
                alive_next = NULL
            for w in range(nwin):
                if not alive[w]:
                    continue
                lo = lo_first + w
                hi = lo + span
                win = cur + w * m * width
                sp = 0
                for q in range(m):
                    for pos in range(width):
                        if win[q * width + pos]:
                            stack[sp] = q * width + pos
                            sp += 1
                while sp > 0:
                    sp -= 1
                    idx = stack[sp]
                    q = idx // width
                    pos = idx % width
                    for e in range(starts[q], starts[q + 1]):
                        pos2 = pos + steps[e]
                        r = targets[e]
                        if 0 <= pos2 < width:
                            if not win[r * width + pos2]:
                                win[r * width + pos2] = 1
                                stack[sp] = r * width + pos2
                                sp += 1
                        elif grow and pos2 == width:
                            if hi + 1 <= rho_max:
                                idx = lo - lo_first_next
                                nxt[(idx * m + r) * width_next + width_next - 1] = 1
                                alive_next[idx] = 1
                        elif grow and pos2 < 0:
                            if lo - 1 >= lam_min:
                                idx = lo - 1 - lo_first_next
                                nxt[(idx * m + r) * width_next] = 1
                                alive_next[idx] = 1
                keep_lo = max(pi_lo, hi - gap_max) - lo
                keep_hi = min(pi_hi, hi) - lo
                if keep_lo < 0:
                    keep_lo = 0
                mask = 0
                if keep_lo <= keep_hi:
                    memset(packed, 0, (width + 7) // 8)
                    any_bit = False
                    for q in range(m):
                        if not is_terminal[q]:
                            continue
                        for pos in range(keep_lo, keep_hi + 1):
                            if win[q * width + pos]:
                                packed[pos >> 3] |= <unsigned char> (1 << (pos & 7))
                                any_bit = True
                    if any_bit:
                        mask = int.from_bytes(packed[:(width + 7) // 8], "little")
                if mask:
                    result[(lo, hi)] = mask
            free(cur)
            free(alive)
            cur = nxt
            alive = alive_next
            nwin = nwin_next
            lo_first = lo_first_next
            span += 1
    finally:
        free(cur)
        free(alive)
        free(stack)
        free(starts)
        free(steps)
        free(targets)
        free(is_terminal)
        free(packed)
    return result


cdef void *realloc_or_raise(void *ptr, size_t size) except NULL:
    cdef void *out = realloc(ptr, size if size > 0 else 1)
    if out == NULL:
        raise MemoryError()
    return out


def member_bfs(int m, initial, terminal, edges, long lam, long pi, long rho):
    if m == 0:
        return False
    cdef long width = rho - lam + 1
    cdef long total = m * width * 4
    cdef int *starts
    cdef int *steps
    cdef int *targets
    _csr(m, edges, &starts, &steps, &targets)
    cdef unsigned char *seen = <unsigned char *> calloc(total, 1)
    cdef long *queue = <long *> malloc(total * sizeof(long))
    cdef unsigned char *is_terminal = <unsigned char *> calloc(m, 1)
    cdef long head = 0, tail = 0, code, pos, pos2, flags, flags2
    cdef int q, r, e
    cdef bint found = False
    try:
        if seen == NULL or queue == NULL or is_terminal == NULL:
            raise MemoryError()
        for t in terminal:
            is_terminal[<int> t] = 1
        for i in initial:
            flags = (1 if lam == 0 else 0) | (2 if rho == 0 else 0)
            code = ((<int> i) * width + (0 - lam)) * 4 + flags
            if not seen[code]:
                seen[code] = 1
                queue[tail] = code
                tail += 1
        while head < tail:
            code = queue[head]
            head += 1
            flags = code % 4
            pos = (code // 4) % width + lam
            q = <int> (code // 4 // width)
            if flags == 3 and pos == pi and is_terminal[q]:
                found = True
                break
            for e in range(starts[q], starts[q + 1]):
                pos2 = pos + steps[e]
                if pos2 < lam or pos2 > rho:
                    continue
                r = targets[e]
                flags2 = flags | (1 if pos2 == lam else 0) | (2 if pos2 == rho else 0)
                code = (r * width + (pos2 - lam)) * 4 + flags2
                if not seen[code]:
                    seen[code] = 1
                    queue[tail] = code
                    tail += 1
    finally:
        free(seen)
        free(queue)
        free(is_terminal)
        free(starts)
        free(steps)
        free(targets)
    return found
