"""Reference implementations of the two hot loops.

Both take an automaton flattened to ``edges = [(p, step, q), ...]`` with
``step`` in ``{+1, -1}``.
"""

from __future__ import annotations

from collections import deque


def ball_sweep(m, initial, terminal, edges, lam_min, rho_max, norm_max, pi_lo, pi_hi, gap_max):
    """Every accepted ``(lam, pi, rho)`` inside the given box.

    Walks are grouped by their current window ``[lo, hi]`` (running minimum
    and maximum).  Inside a window the reachable positions of each state form
    a bitmask (bit ``pos - lo``), closed under the moves that stay inside the
    window; moves that leave it seed the neighbouring wider window.  Windows
    are processed by increasing width, so only two layers are live.

    Returns ``{(lam, rho): mask}`` with bit ``pi - lam`` set for each member.
    """
    result: dict[tuple[int, int], int] = {}
    if m == 0 or not initial or lam_min > 0 or rho_max < 0 or norm_max < 0:
        return result
    out = [[] for _ in range(m)]
    up_loop = [False] * m
    down_loop = [False] * m
    for p, step, q in edges:
        if p == q:
            if step > 0:
                up_loop[p] = True
            else:
                down_loop[p] = True
        out[p].append((step, q))
    is_terminal = [False] * m
    for t in terminal:
        is_terminal[t] = True

    layer: dict[int, list[int]] = {0: [0] * m}
    for i in initial:
        layer[0][i] = 1
    span = 0
    while layer:
        full = (1 << (span + 1)) - 1
        top = 1 << span
        nxt: dict[int, list[int]] = {}
        for lo in sorted(layer):
            hi = lo + span
            masks = layer[lo]
            work = [q for q in range(m) if masks[q]]
            queued = [bool(masks[q]) for q in range(m)]
            while work:
                p = work.pop()
                queued[p] = False
                mp = masks[p]
                if up_loop[p]:
                    mp = full ^ ((mp & -mp) - 1)
                if down_loop[p]:
                    mp = (1 << mp.bit_length()) - 1
                masks[p] = mp
                for step, q in out[p]:
                    moved = (mp << 1) & full if step > 0 else mp >> 1
                    new = moved & ~masks[q]
                    if new:
                        masks[q] |= new
                        if not queued[q]:
                            queued[q] = True
                            work.append(q)
            # emit
            accepted = 0
            for q in range(m):
                if is_terminal[q]:
                    accepted |= masks[q]
            if accepted:
                keep_lo = max(pi_lo, hi - gap_max) - lo
                keep_hi = min(pi_hi, hi) - lo
                if keep_lo <= keep_hi:
                    keep_lo = max(keep_lo, 0)
                    window = ((1 << (keep_hi + 1)) - 1) ^ ((1 << keep_lo) - 1)
                    accepted &= window
                    if accepted:
                        result[(lo, hi)] = accepted
            if span + 1 > norm_max:
                continue
            # leave the window
            for p in range(m):
                mp = masks[p]
                if not mp:
                    continue
                for step, q in out[p]:
                    if step > 0:
                        if mp & top and hi + 1 <= rho_max:
                            target = nxt.setdefault(lo, [0] * m)
                            target[q] |= 1 << (span + 1)
                    elif mp & 1 and lo - 1 >= lam_min:
                        target = nxt.setdefault(lo - 1, [0] * m)
                        target[q] |= 1
        layer = nxt
        span += 1
    return result


def member_bfs(m, initial, terminal, edges, lam, pi, rho):
    """Is some accepted walk's (min, end, max) exactly ``(lam, pi, rho)``?"""
    out = [[] for _ in range(m)]
    for p, step, q in edges:
        out[p].append((step, q))
    is_terminal = [False] * m
    for t in terminal:
        is_terminal[t] = True
    seen = set()
    queue = deque()
    for i in initial:
        config = (i, 0, lam == 0, rho == 0)
        if config not in seen:
            seen.add(config)
            queue.append(config)
    while queue:
        q, pos, low, high = queue.popleft()
        if low and high and pos == pi and is_terminal[q]:
            return True
        for step, r in out[q]:
            p2 = pos + step
            if p2 < lam or p2 > rho:
                continue
            config = (r, p2, low or p2 == lam, high or p2 == rho)
            if config not in seen:
                seen.add(config)
                queue.append(config)
    return False
