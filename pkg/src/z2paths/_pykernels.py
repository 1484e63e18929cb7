"""Pure-Python twin of the compiled kernel; same signature, same results."""


def count_split(masks, offsets, phase, lo, hi):
    polys = [tuple(masks[offsets[p]:offsets[p + 1]]) for p in range(len(offsets) - 1)]
    phase = tuple(phase)
    n0 = n1 = 0
    for s in range(lo, hi):
        for poly in polys:
            par = 0
            for m in poly:
                if m & s == m:
                    par ^= 1
            if par:
                break
        else:
            par = 0
            for m in phase:
                if m & s == m:
                    par ^= 1
            if par:
                n1 += 1
            else:
                n0 += 1
    return n0, n1
