"""Independent reference implementations used only by the tests."""
import math
from collections import deque
from itertools import combinations

SQRT3 = math.sqrt(3.0)
HEX_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1))


def bfs_hex(limit):
    """Graph distance from the origin in the six-neighbour graph, for all
    points with both coordinates in [-limit, limit]."""
    dist = {(0, 0): 0}
    todo = deque([(0, 0)])
    while todo:
        p = todo.popleft()
        for a, b in HEX_STEPS:
            q = (p[0] + a, p[1] + b)
            if max(abs(q[0]), abs(q[1])) <= limit + 1 and q not in dist:
                dist[q] = dist[p] + 1
                todo.append(q)
    return dist


def float_hex_sq(di, dj):
    x, y = di - dj / 2.0, dj * SQRT3 / 2.0
    return x * x + y * y


def distinct_differences(dots):
    diffs = sorted((b[0] - a[0], b[1] - a[1]) for a, b in combinations(dots, 2))
    diffs += [(-x, -y) for x, y in diffs]
    diffs.sort()
    return all(diffs[k] != diffs[k + 1] for k in range(len(diffs) - 1))


def shortest_ruler(order):
    """Length of the shortest Golomb ruler with ``order`` marks (backtrack)."""
    if order <= 1:
        return 0
    length = order * (order - 1) // 2

    def extend(marks, used, length):
        if len(marks) == order:
            return marks[-1] == length
        left = order - len(marks)
        for x in range(marks[-1] + 1, length - (left - 1) * (left) // 2 + 1):
            new = {x - y for y in marks}
            if new & used:
                continue
            if extend(marks + [x], used | new, length):
                return True
        return False

    while not extend([0], set(), length):
        length += 1
    return length


def brute_max_ddc(cells):
    cells = sorted(cells)
    for m in range(len(cells), 0, -1):
        for sub in combinations(cells, m):
            if distinct_differences(sub):
                return m
    return 0
