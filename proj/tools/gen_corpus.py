#!/usr/bin/env python3
"""Writes corpus/categories/*.json.

Each file carries an "expect" block computed here by a straightforward
Python check of the classical conditions, independent of the C++ code.
A handful of verdicts worked out by hand are asserted before writing.
"""
import itertools
import json
import os
import sys

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "corpus", "categories")


class Cat:
    def __init__(self, objects):
        self.objects = list(objects)
        self.mor = {}  # name -> (dom, cod)
        self.comp = {}  # (g, f) -> gf
        self.ident = {}
        for x in self.objects:
            self.ident[x] = "id_" + x
            self.mor["id_" + x] = (x, x)

    def arrow(self, name, dom, cod):
        assert name not in self.mor
        self.mor[name] = (dom, cod)

    def set_comp(self, g, f, h):
        assert self.mor[f][1] == self.mor[g][0], (g, f)
        assert self.mor[h] == (self.mor[f][0], self.mor[g][1]), (g, f, h)
        old = self.comp.get((g, f))
        assert old is None or old == h, (g, f, old, h)
        self.comp[(g, f)] = h

    def fill_identities(self):
        for f, (d, c) in self.mor.items():
            self.comp[(self.ident[c], f)] = f
            self.comp[(f, self.ident[d])] = f

    def c(self, g, f):
        return self.comp[(g, f)]

    def check(self):
        for g, f in itertools.product(self.mor, repeat=2):
            if self.mor[f][1] == self.mor[g][0]:
                assert (g, f) in self.comp, ("missing", g, f)
        for h, g, f in itertools.product(self.mor, repeat=3):
            if self.mor[f][1] == self.mor[g][0] and self.mor[g][1] == self.mor[h][0]:
                assert self.c(h, self.c(g, f)) == self.c(self.c(h, g), f), (h, g, f)

    def hom(self, x, y):
        return [f for f, dc in self.mor.items() if dc == (x, y)]

    def out_of(self, x):
        return [f for f, dc in self.mor.items() if dc[0] == x]

    def into(self, y):
        return [f for f, dc in self.mor.items() if dc[1] == y]

    def op(self):
        o = Cat([])
        o.objects = list(self.objects)
        o.ident = dict(self.ident)
        o.mor = {f: (c, d) for f, (d, c) in self.mor.items()}
        o.comp = {(f, g): h for (g, f), h in self.comp.items()}
        return o

    def is_iso(self, f):
        d, c = self.mor[f]
        return any(self.c(g, f) == self.ident[d] and self.c(f, g) == self.ident[c] for g in self.hom(c, d))


def poset_cat(elements, covers):
    """Thin category of the reflexive transitive closure of `covers`."""
    le = {(x, x) for x in elements} | set(covers)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(le), repeat=2):
            if b == c and (a, d) not in le:
                le.add((a, d))
                changed = True
    for a, b in le:
        assert a == b or (b, a) not in le, "not antisymmetric"
    cat = Cat(elements)
    name = {}
    for a in elements:
        name[(a, a)] = "id_" + a
    for a in elements:
        for b in elements:
            if a != b and (a, b) in le:
                name[(a, b)] = a + "->" + b
                cat.arrow(a + "->" + b, a, b)
    for (a, b), (b2, c) in itertools.product(le, repeat=2):
        if b == b2:
            cat.comp[(name[(b, c)], name[(a, b)])] = name[(a, c)]
    cat.fill_identities()
    return cat


def marked_closure(cat, gens):
    w = set(cat.ident.values()) | set(gens)
    changed = True
    while changed:
        changed = False
        for f, g in itertools.product(list(w), repeat=2):
            if cat.mor[f][1] == cat.mor[g][0]:
                h = cat.c(g, f)
                if h not in w:
                    w.add(h)
                    changed = True
    return w


def monoid(elements, table, obj="*"):
    cat = Cat([obj])
    cat.ident[obj] = elements[0]
    del cat.mor["id_" + obj]
    for e in elements:
        cat.mor[e] = (obj, obj)
    for g in elements:
        for f in elements:
            cat.comp[(g, f)] = table[(g, f)]
    return cat


# the classical conditions


def left_fractions(cat, w, proper):
    for x in cat.objects:
        if cat.ident[x] not in w:
            return False, "(1)"
    for f in w:
        for g in cat.out_of(cat.mor[f][1]):
            if g in w and cat.c(g, f) not in w:
                return False, "(1)"
    for v in w:
        for f in cat.out_of(cat.mor[v][0]):
            ok = False
            for wp in cat.out_of(cat.mor[f][1]):
                if wp not in w:
                    continue
                for fp in cat.hom(cat.mor[v][1], cat.mor[wp][1]):
                    if proper and f in w and fp not in w:
                        continue
                    if cat.c(fp, v) == cat.c(wp, f):
                        ok = True
            if not ok:
                return False, "(2')" if proper else "(2)"
    for f in cat.mor:
        for g in cat.hom(*cat.mor[f]):
            if not any(u in w and cat.c(f, u) == cat.c(g, u) for u in cat.into(cat.mor[f][0])):
                continue
            if not any(v in w and cat.c(v, f) == cat.c(v, g) for v in cat.out_of(cat.mor[f][1])):
                return False, "(3)"
    return True, ""


def two_of_three(cat, w):
    for f, g in itertools.product(cat.mor, repeat=2):
        if cat.mor[f][1] != cat.mor[g][0]:
            continue
        n = (f in w) + (g in w) + (cat.c(g, f) in w)
        if n == 2:
            return False
    return True


def expectations(cat, w):
    op = cat.op()
    return {
        "clf": left_fractions(cat, w, False)[0],
        "proper_clf": left_fractions(cat, w, True)[0],
        "crf": left_fractions(op, w, False)[0],
        "proper_crf": left_fractions(op, w, True)[0],
        "two_out_of_three": two_of_three(cat, w),
    }


def to_json(cat, w, description, expect):
    names = list(cat.mor)
    non_id = [f for f in names if f not in cat.ident.values()]
    j = {
        "description": description,
        "objects": cat.objects,
        "morphisms": [{"id": f, "dom": cat.mor[f][0], "cod": cat.mor[f][1]} for f in names],
        "identities": cat.ident,
        "comp": [[g, f, cat.comp[(g, f)]] for g in non_id for f in non_id if (g, f) in cat.comp],
        "marked": [f for f in non_id if f in w],
        "expect": expect,
    }
    return j


CORPUS = []


def add(name, cat, w_gens, description, hand=None):
    cat.check()
    w = marked_closure(cat, w_gens)
    e = expectations(cat, w)
    if hand:
        for k, v in hand.items():
            assert e[k] == v, (name, k, e[k], v)
    CORPUS.append((name, to_json(cat, w, description, e)))


def iso_marked(name, cat, description):
    cat.check()
    w = {f for f in cat.mor if cat.is_iso(f)}
    add(name, cat, sorted(w), description)


def build():
    chain = lambda n: poset_cat([str(i) for i in range(n + 1)], [(str(i), str(i + 1)) for i in range(n)])

    add("point", poset_cat(["x"], []), [], "the terminal category", {"proper_clf": True, "proper_crf": True})
    add("arrow_unmarked", chain(1), [], "walking arrow, identities marked", {"proper_clf": True})
    add("arrow_marked", chain(1), ["0->1"], "walking arrow, marked", {"proper_clf": True, "proper_crf": True})

    iso = Cat(["a", "b"])
    iso.arrow("f", "a", "b")
    iso.arrow("g", "b", "a")
    iso.set_comp("g", "f", "id_a")
    iso.set_comp("f", "g", "id_b")
    iso.fill_identities()
    add("walking_iso_marked", iso, ["f", "g"], "walking isomorphism, all marked", {"proper_clf": True})
    add("walking_iso_unmarked", iso, [], "walking isomorphism, identities marked", {"proper_clf": True})

    add("chain2_all", chain(2), ["0->1", "1->2"], "[2] fully marked", {"proper_clf": True})
    add("chain2_first", chain(2), ["0->1"], "[2] with 0->1 marked", {"proper_clf": True})
    add("chain2_second", chain(2), ["1->2"], "[2] with 1->2 marked", {"proper_clf": True})
    add("chain2_long", chain(2), ["0->2"], "[2] with only 0->2 marked", {"clf": False, "proper_clf": False})
    add("chain3_all", chain(3), ["0->1", "1->2", "2->3"], "[3] fully marked")
    add("chain3_middle", chain(3), ["1->2"], "[3] with 1->2 marked")

    par = Cat(["a", "b"])
    par.arrow("f", "a", "b")
    par.arrow("g", "a", "b")
    par.fill_identities()
    add("parallel_one", par, ["f"], "parallel pair, one arrow marked", {"clf": False, "proper_clf": False})
    add("parallel_both", par, ["f", "g"], "parallel pair, both marked", {"clf": False, "proper_clf": False})
    add("parallel_none", par, [], "parallel pair, identities marked", {"proper_clf": True})

    co = Cat(["s", "a", "b", "c"])
    co.arrow("w", "s", "a")
    co.arrow("f", "a", "b")
    co.arrow("g", "a", "b")
    co.arrow("v", "b", "c")
    co.arrow("h", "s", "b")
    co.arrow("k", "a", "c")
    co.arrow("m", "s", "c")
    co.set_comp("f", "w", "h")
    co.set_comp("g", "w", "h")
    co.set_comp("v", "f", "k")
    co.set_comp("v", "g", "k")
    co.set_comp("v", "h", "m")
    co.set_comp("k", "w", "m")
    co.fill_identities()
    add("coequalizer", co, ["w", "v"], "a pair equalized by a marked map and coequalized by another",
        {"proper_clf": True})

    idem = monoid(["1", "e"], {("1", "1"): "1", ("1", "e"): "e", ("e", "1"): "e", ("e", "e"): "e"})
    add("idempotent_all", idem, ["e"], "monoid {1, e} with e idempotent, all marked", {"proper_clf": True})
    add("idempotent_none", idem, [], "monoid {1, e} with e idempotent, identity marked")
    z2 = monoid(["1", "t"], {("1", "1"): "1", ("1", "t"): "t", ("t", "1"): "t", ("t", "t"): "1"})
    add("z2_all", z2, ["t"], "the group Z/2, all marked", {"proper_clf": True})
    z3 = monoid(["1", "r", "rr"], {(a, b): ["1", "r", "rr"][(["1", "r", "rr"].index(a) + ["1", "r", "rr"].index(b)) % 3]
                                   for a in ["1", "r", "rr"] for b in ["1", "r", "rr"]})
    add("z3_none", z3, [], "the group Z/3, identity marked")

    cospan = poset_cat(["a", "b", "c"], [("a", "c"), ("b", "c")])
    add("cospan_one", cospan, ["b->c"], "cospan a -> c <- b with b -> c marked", {"proper_clf": True})
    span = poset_cat(["a", "b", "c"], [("c", "a"), ("c", "b")])
    add("span_one", span, ["c->a"], "span a <- c -> b with c -> a marked", {"clf": False, "proper_clf": False})
    add("span_all", span, ["c->a", "c->b"], "span a <- c -> b, all marked")

    sq = poset_cat(["bot", "a", "b", "top"], [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")])
    add("square_mixed", sq, ["bot->a", "b->top"], "commutative square with opposite sides marked",
        {"proper_clf": True})
    add("square_all", sq, ["bot->a", "bot->b", "a->top", "b->top"], "commutative square, all marked")
    add("square_left", sq, ["bot->a", "b->top"] + ["bot->b"], "commutative square, three sides marked")

    def ladder(rungs, capped):
        els = ["bot"] + ["a%d" % i for i in range(1, rungs + 1)] + ["b%d" % i for i in range(1, rungs + 1)]
        covers = [("bot", "a1"), ("bot", "b1")]
        marks = ["bot->a1", "bot->b1"]
        for i in range(1, rungs):
            covers += [("a%d" % i, "a%d" % (i + 1)), ("b%d" % i, "b%d" % (i + 1)),
                       ("a%d" % i, "b%d" % (i + 1)), ("b%d" % i, "a%d" % (i + 1))]
            marks += ["a%d->a%d" % (i, i + 1), "b%d->b%d" % (i, i + 1)]
        if capped:
            els.append("top")
            covers += [("a%d" % rungs, "top"), ("b%d" % rungs, "top")]
            marks += ["a%d->top" % rungs, "b%d->top" % rungs]
        return poset_cat(els, covers), marks

    c, m = ladder(3, False)
    add("ladder3", c, m, "three rungs of the ladder whose infinite version satisfies CLF but not proper CLF")
    c, m = ladder(3, True)
    add("ladder3_capped", c, m, "three rungs of the ladder with a marked cap")

    v = poset_cat(["x", "y", "z"], [("x", "z"), ("y", "z")])
    add("join_all", v, ["x->z", "y->z"], "poset with a join, all marked", {"proper_clf": True})

    five = Cat(["s", "x", "y", "y1", "y2"])
    for n, d, c_ in [("w", "s", "x"), ("f1", "x", "y"), ("g1", "x", "y"), ("f2", "x", "y"), ("g2", "x", "y"),
                     ("h", "s", "y"), ("v1", "y", "y1"), ("p", "x", "y1"), ("q2", "x", "y1"), ("r2", "x", "y1"),
                     ("t1", "s", "y1"), ("v2", "y1", "y2"), ("u", "y", "y2"), ("z", "x", "y2"), ("t2", "s", "y2")]:
        five.arrow(n, d, c_)
    for f in ["f1", "g1", "f2", "g2"]:
        five.set_comp(f, "w", "h")
        five.set_comp("u", f, "z")
    five.set_comp("v1", "f1", "p")
    five.set_comp("v1", "g1", "p")
    five.set_comp("v1", "f2", "q2")
    five.set_comp("v1", "g2", "r2")
    five.set_comp("v1", "h", "t1")
    for f in ["p", "q2", "r2"]:
        five.set_comp("v2", f, "z")
        five.set_comp(f, "w", "t1")
    five.set_comp("v2", "v1", "u")
    five.set_comp("v2", "t1", "t2")
    five.set_comp("u", "h", "t2")
    five.set_comp("z", "w", "t2")
    five.fill_identities()
    add("two_pairs", five, ["w", "v1", "v2"], "two parallel pairs coequalized in two steps")

    stuck = Cat(["s", "a", "b"])
    stuck.arrow("w", "s", "a")
    stuck.arrow("f", "a", "b")
    stuck.arrow("g", "a", "b")
    stuck.arrow("h", "s", "b")
    stuck.set_comp("f", "w", "h")
    stuck.set_comp("g", "w", "h")
    stuck.fill_identities()
    add("stuck_pair", stuck, ["w"], "a pair equalized by a marked map with nothing to coequalize it",
        {"clf": False})

    iso_marked("iso_marked_chain2", chain(2), "[2] marked at isomorphisms")
    iso_marked("iso_marked_parallel", par, "parallel pair marked at isomorphisms")


def main():
    build()
    os.makedirs(OUT, exist_ok=True)
    for name, j in CORPUS:
        with open(os.path.join(OUT, name + ".json"), "w") as fh:
            json.dump(j, fh, indent=1)
            fh.write("\n")
    print("wrote %d categories" % len(CORPUS), file=sys.stderr)


if __name__ == "__main__":
    main()
