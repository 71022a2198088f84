"""Reidemeister moves on signed Gauss codes.

Removing moves are detected on the code together with its Carter
surface: an R1- is any adjacent pair, an R2- additionally needs the two
connecting arcs to bound an embedded bigon (a 2-sided face), an R3
needs an embedded triangle (3-sided face on three distinct crossings)
with acyclic over/under data.  Creating moves are generated per word
gap (R1+) and per face boundary side pair (R2+), with writhes derived
from the side directions so every listed move is an isotopy.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InapplicableMove
from .fatgraph import build_carter, faces
from .gauss import GaussCode, _fresh_labels


@dataclass(frozen=True)
class RMove:
    kind: str  # R1+ R1- R2+ R2- R3
    site: tuple[int, ...]
    params: tuple = ()


def _r1_removals(code: GaussCode) -> list[RMove]:
    L = len(code.word)
    out = []
    seen: set[frozenset[int]] = set()
    for i in range(L):
        j = (i + 1) % L
        if i != j and code.word[i][0] == code.word[j][0]:
            key = frozenset((i, j))
            if key not in seen:
                seen.add(key)
                out.append(RMove("R1-", tuple(sorted((i, j)))))
    return out


def _bigon_faces(code: GaussCode) -> set[frozenset[int]]:
    d = build_carter(code)
    out = set()
    for f in faces(d.fg):
        if len(f) == 2:
            edges = frozenset(dart // 2 for dart in f)
            if len(edges) == 2:
                out.add(edges)
    return out


def _r2_removals(code: GaussCode) -> list[RMove]:
    L = len(code.word)
    if L < 4:
        return []
    bigons = _bigon_faces(code)
    out = []
    seen: set[frozenset[int]] = set()
    for i in range(L):
        j = (i + 1) % L
        (lx, fx), (ly, fy) = code.word[i], code.word[j]
        if lx == ly or fx != fy:
            continue
        if code.writhe[lx] == code.writhe[ly]:
            continue
        px = code.positions(lx)
        py = code.positions(ly)
        ox = px[0] if px[1] == i else px[1]
        oy = py[0] if py[1] == j else py[1]
        if len({i, j, ox, oy}) != 4:
            continue
        if (oy + 1) % L == ox:
            k = oy
        elif (ox + 1) % L == oy:
            k = ox
        else:
            continue
        if frozenset((i, k)) not in bigons:
            continue
        key = frozenset((i, j, ox, oy))
        if key not in seen:
            seen.add(key)
            out.append(RMove("R2-", tuple(sorted((i, j, ox, oy)))))
    return out


def _r3_moves(code: GaussCode) -> list[RMove]:
    L = len(code.word)
    if L < 6:
        return []
    d = build_carter(code)
    out = []
    seen: set[tuple[int, ...]] = set()
    for f in faces(d.fg):
        if len(f) != 3:
            continue
        ks = sorted(dart // 2 for dart in f)
        if len(set(ks)) != 3:
            continue
        pairs = [(k, (k + 1) % L) for k in ks]
        labels = [{code.word[a][0], code.word[b][0]} for a, b in pairs]
        names = set().union(*labels)
        if len(names) != 3 or any(len(lb) != 2 for lb in labels):
            continue
        # over/under must be acyclic among the three strand segments
        wins = [0, 0, 0]
        ok = True
        for r in range(3):
            for t in range(r + 1, 3):
                common = labels[r] & labels[t]
                if len(common) != 1:
                    ok = False
                    break
                x = next(iter(common))
                pos_r = pairs[r][0] if code.word[pairs[r][0]][0] == x else pairs[r][1]
                if code.word[pos_r][1] == "O":
                    wins[r] += 1
                else:
                    wins[t] += 1
            if not ok:
                break
        if not ok or sorted(wins) != [0, 1, 2]:
            continue
        key = tuple(ks)
        if key not in seen:
            seen.add(key)
            out.append(RMove("R3", key))
    return out


def _r1_creations(code: GaussCode) -> list[RMove]:
    L = len(code.word)
    gaps = range(L) if L else (0,)
    label = _fresh_labels(set(code.writhe), 1)[0]
    out = []
    for g in gaps:
        for first in ("O", "U"):
            for w in (1, -1):
                out.append(RMove("R1+", (g,), (label, first, w)))
    return out


def _r2_creations(code: GaussCode) -> list[RMove]:
    L = len(code.word)
    if L == 0:
        return []
    d = build_carter(code)
    lx, ly = _fresh_labels(set(code.writhe), 2)
    out = []
    for f in faces(d.fg):
        sides = list(f)
        for ai in range(len(sides)):
            for bi in range(len(sides)):
                ea, eb = sides[ai] // 2, sides[bi] // 2
                if ai != bi and ea == eb:
                    continue  # relative position along one band ambiguous
                da = 1 if sides[ai] % 2 == 0 else -1
                db = 1 if sides[bi] % 2 == 0 else -1
                for fa in ("O", "U"):
                    wx = db if fa == "O" else -db
                    b_first = "y" if da * db == 1 else "x"
                    out.append(
                        RMove(
                            "R2+",
                            (ea, eb) if ai != bi else (ea,),
                            (lx, ly, fa, wx, b_first),
                        )
                    )
    return out


def enumerate_rmoves(code: GaussCode) -> list[RMove]:
    """Applicable removing moves plus the generating creating family."""
    return (
        _r1_removals(code)
        + _r2_removals(code)
        + _r3_moves(code)
        + _r1_creations(code)
        + _r2_creations(code)
    )


def apply_rmove(code: GaussCode, move: RMove) -> GaussCode:
    if move not in enumerate_rmoves(code):
        raise InapplicableMove(f"{move} is not applicable")
    word = list(code.word)
    writhe = dict(code.writhe)
    if move.kind in ("R1-", "R2-"):
        drop_labels = {word[p][0] for p in move.site}
        word = [tok for p, tok in enumerate(word) if p not in set(move.site)]
        for lab in drop_labels:
            del writhe[lab]
        return GaussCode(tuple(word), writhe)
    if move.kind == "R3":
        L = len(word)
        for k in move.site:
            j = (k + 1) % L
            word[k], word[j] = word[j], word[k]
        return GaussCode(tuple(word), writhe)
    if move.kind == "R1+":
        label, first, w = move.params
        g = move.site[0]
        second = "U" if first == "O" else "O"
        word[g:g] = [(label, first), (label, second)]
        writhe[label] = w
        return GaussCode(tuple(word), writhe)
    if move.kind == "R2+":
        lx, ly, fa, wx, b_first = move.params
        fb = "U" if fa == "O" else "O"
        a_tokens = [(lx, fa), (ly, fa)]
        b_tokens = [(ly, fb), (lx, fb)] if b_first == "y" else [(lx, fb), (ly, fb)]
        if len(move.site) == 1:
            g = move.site[0] + 1
            word[g:g] = a_tokens + b_tokens
        else:
            ga, gb = move.site[0] + 1, move.site[1] + 1
            if ga >= gb:
                word[ga:ga] = a_tokens
                word[gb:gb] = b_tokens
            else:
                word[gb:gb] = b_tokens
                word[ga:ga] = a_tokens
        writhe[lx] = wx
        writhe[ly] = -wx
        return GaussCode(tuple(word), writhe)
    raise InapplicableMove(f"unknown move kind {move.kind!r}")
