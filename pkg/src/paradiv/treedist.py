"""Ordered-labeled tree edit distance (Zhang-Shasha keyroots DP).

Trees are presented as postorder arrays: integer labels and, per node,
the postorder index of its leftmost leaf descendant.  The inner dynamic
program is JIT-compiled with numba when available; a pure-Python twin is
used otherwise (and as a safety net in constrained environments).
"""

from __future__ import annotations

import numpy as np


def _ted_arrays(lml1, kr1, labels1, lml2, kr2, labels2):
    n1 = labels1.shape[0]
    n2 = labels2.shape[0]
    td = np.zeros((n1, n2), dtype=np.int32)
    for ki in range(kr1.shape[0]):
        i = kr1[ki]
        for kj in range(kr2.shape[0]):
            j = kr2[kj]
            m = i - lml1[i] + 2
            n = j - lml2[j] + 2
            fd = np.zeros((m, n), dtype=np.int32)
            ioff = lml1[i] - 1
            joff = lml2[j] - 1
            for x in range(1, m):
                fd[x, 0] = fd[x - 1, 0] + 1
            for y in range(1, n):
                fd[0, y] = fd[0, y - 1] + 1
            for x in range(1, m):
                for y in range(1, n):
                    if lml1[x + ioff] == lml1[i] and lml2[y + joff] == lml2[j]:
                        cost = 0 if labels1[x + ioff] == labels2[y + joff] else 1
                        best = fd[x - 1, y] + 1
                        if fd[x, y - 1] + 1 < best:
                            best = fd[x, y - 1] + 1
                        if fd[x - 1, y - 1] + cost < best:
                            best = fd[x - 1, y - 1] + cost
                        fd[x, y] = best
                        td[x + ioff, y + joff] = best
                    else:
                        p = lml1[x + ioff] - 1 - ioff
                        q = lml2[y + joff] - 1 - joff
                        best = fd[x - 1, y] + 1
                        if fd[x, y - 1] + 1 < best:
                            best = fd[x, y - 1] + 1
                        if fd[p, q] + td[x + ioff, y + joff] < best:
                            best = fd[p, q] + td[x + ioff, y + joff]
                        fd[x, y] = best
    return int(td[n1 - 1, n2 - 1])


try:  # pragma: no cover - exercised implicitly
    from numba import njit

    _ted_arrays_jit = njit(cache=True)(_ted_arrays)
except Exception:  # pragma: no cover
    _ted_arrays_jit = _ted_arrays


def postorder_arrays(root) -> tuple[np.ndarray, np.ndarray, list[str]]:
    """Flatten a tree into (leftmost-leaf indices, label strings) postorder.

    ``root`` is any object with ``label`` and ``children`` attributes.
    Returns (lml, labels) where labels is the postorder label list.
    """
    lml: list[int] = []
    labels: list[str] = []

    # iterative postorder; stack of (node, child cursor, lml of subtree)
    stack = [(root, 0, -1)]
    while stack:
        node, cursor, first_leaf = stack[-1]
        if cursor < len(node.children):
            stack[-1] = (node, cursor + 1, first_leaf)
            stack.append((node.children[cursor], 0, -1))
        else:
            idx = len(labels)
            my_lml = first_leaf if node.children else idx
            lml.append(my_lml)
            labels.append(node.label)
            stack.pop()
            if stack:
                pn, pc, pf = stack[-1]
                if pf == -1:
                    stack[-1] = (pn, pc, my_lml)
    return np.asarray(lml, dtype=np.int32), labels


def _keyroots(lml: np.ndarray) -> np.ndarray:
    last: dict[int, int] = {}
    for i in range(lml.shape[0]):
        last[int(lml[i])] = i
    return np.asarray(sorted(last.values()), dtype=np.int32)


def tree_distance(a, b) -> int:
    """Unit-cost ordered TED between two trees (label/children objects)."""
    lml1, lab1 = postorder_arrays(a)
    lml2, lab2 = postorder_arrays(b)
    intern: dict[str, int] = {}
    enc1 = np.asarray([intern.setdefault(s, len(intern)) for s in lab1], dtype=np.int32)
    enc2 = np.asarray([intern.setdefault(s, len(intern)) for s in lab2], dtype=np.int32)
    return _ted_arrays_jit(lml1, _keyroots(lml1), enc1, lml2, _keyroots(lml2), enc2)
