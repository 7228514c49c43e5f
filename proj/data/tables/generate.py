"""Builds the shipped finite table algebras.

Each algebra is a lattice of levels with a finite commutative ring at every
level and ring maps between comparable levels. Operands meet at the join of
their levels; a quotient lives at the least level (above the join) where the
divisor becomes a unit, and is bot when there is none. Run from this folder.
"""
import itertools
import json


def zmod(n):
    return {
        "elems": list(range(n)),
        "add": lambda a, b: (a + b) % n,
        "mul": lambda a, b: (a * b) % n,
        "neg": lambda a: (-a) % n,
        "zero": 0,
        "one": 1 % n,
    }


def product(r, s):
    return {
        "elems": list(itertools.product(r["elems"], s["elems"])),
        "add": lambda a, b: (r["add"](a[0], b[0]), s["add"](a[1], b[1])),
        "mul": lambda a, b: (r["mul"](a[0], b[0]), s["mul"](a[1], b[1])),
        "neg": lambda a: (r["neg"](a[0]), s["neg"](a[1])),
        "zero": (r["zero"], s["zero"]),
        "one": (r["one"], s["one"]),
    }


def build(levels, leq, rings, maps, label):
    """levels: names in enumeration order (bottom first); leq(l, m); rings[l];
    maps[(l, m)](x) for l <= m; label(level, value) -> carrier label."""

    def join(l, m):
        ups = [k for k in levels if leq(l, k) and leq(m, k)]
        least = [k for k in ups if all(leq(k, u) for u in ups)]
        return least[0] if least else None

    def up(level, v, target):
        return v if level == target else maps[(level, target)](v)

    elems = [(l, v) for l in levels for v in rings[l]["elems"]]
    bot = len(elems)
    index = {e: i for i, e in enumerate(elems)}

    def binop(name):
        def f(a, b):
            if a == bot or b == bot:
                return bot
            (la, va), (lb, vb) = elems[a], elems[b]
            j = join(la, lb)
            if j is None:
                return bot
            return index[(j, rings[j][name](up(la, va, j), up(lb, vb, j)))]
        return f

    def inverse_level(l, v):
        for m in levels:
            if not leq(l, m):
                continue
            r = rings[m]
            w = up(l, v, m)
            if any(r["mul"](w, c) == r["one"] for c in r["elems"]):
                return m
        return None

    def div(a, b):
        if a == bot or b == bot:
            return bot
        (la, va), (lb, vb) = elems[a], elems[b]
        j = join(la, lb)
        if j is None:
            return bot
        m = inverse_level(j, up(lb, vb, j))
        if m is None:
            return bot
        r = rings[m]
        w = up(lb, vb, m)
        inv = next(c for c in r["elems"] if r["mul"](w, c) == r["one"])
        return index[(m, r["mul"](up(la, va, m), inv))]

    add, mul = binop("add"), binop("mul")
    n = bot + 1
    ids = range(n)

    def neg(a):
        if a == bot:
            return bot
        l, v = elems[a]
        return index[(l, rings[l]["neg"](v))]

    base = levels[0]
    return {
        "carrier": [label(l, v) for l, v in elems] + ["bot"],
        "add": [[add(a, b) for b in ids] for a in ids],
        "mul": [[mul(a, b) for b in ids] for a in ids],
        "neg": [neg(a) for a in ids],
        "div": [[div(a, b) for b in ids] for a in ids],
        "zero": index[(base, rings[base]["zero"])],
        "one": index[(base, rings[base]["one"])],
        "bot": bot,
    }


def chain(p):
    f = zmod(p)
    return build(
        ["0", "c"],
        lambda l, m: l == m or (l, m) == ("0", "c"),
        {"0": f, "c": f},
        {("0", "c"): lambda v: v},
        lambda l, v: str(v) if l == "0" else f"c{v}",
    )


def split():
    f = zmod(2)
    return build(
        ["0", "a", "b"],
        lambda l, m: l == m or l == "0",
        {"0": f, "a": f, "b": f},
        {("0", "a"): lambda v: v, ("0", "b"): lambda v: v},
        lambda l, v: str(v) if l == "0" else f"{l}{v}",
    )


def idempotents():
    # F2 x F2 at the base; each projection is a level where one factor survives.
    f = zmod(2)
    r = product(f, f)
    return build(
        ["0", "p", "q"],
        lambda l, m: l == m or l == "0",
        {"0": r, "p": f, "q": f},
        {("0", "p"): lambda v: v[0], ("0", "q"): lambda v: v[1]},
        lambda l, v: f"{v[0]}{v[1]}" if l == "0" else f"{l}{v}",
    )


if __name__ == "__main__":
    for name, table in [
        ("gcm_f2_chain", chain(2)),
        ("gcm_f3_chain", chain(3)),
        ("gcm_f2_split", split()),
        ("gcm_idempotents", idempotents()),
    ]:
        table = {"name": name, **table}
        with open(f"{name}.json", "w") as out:
            json.dump(table, out)
            out.write("\n")
