"""Edge-path fundamental group presentations, Tietze simplification,
abelianization, and brute-force finite quotient search.

Relator words are tuples of signed 1-based generator indices.  The quotient
search certifies non-triviality of a group: a homomorphism onto a nontrivial
subgroup of a finite group (symmetric or PSL(2,q)) decidably separates the
group from the trivial one, which is what the sphere-vs-homology-sphere
distinction needs.
"""

import heapq
import time
from collections import Counter, defaultdict, deque

from .core import label_key
from . import homology


# ---------------- words ----------------

def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def cyclically_reduce(word):
    w = free_reduce(list(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert_word(word):
    return tuple(-x for x in reversed(word))


def _canonical_cyclic(word):
    best = None
    for u in (word, invert_word(word)):
        for i in range(len(u)):
            r = u[i:] + u[:i]
            if best is None or r < best:
                best = r
    return best


class Presentation:
    """Finite group presentation: generator count plus relator words."""

    __slots__ = ("ngens", "relators")

    def __init__(self, ngens, relators):
        self.ngens = ngens
        rels = []
        for w in relators:
            w = cyclically_reduce(w)
            if any(abs(x) < 1 or abs(x) > ngens for x in w):
                raise ValueError("generator index out of range in %r" % (w,))
            if w:
                rels.append(w)
        self.relators = tuple(rels)

    def __repr__(self):
        return "<Presentation gens=%d relators=%d len=%d>" % (
            self.ngens, len(self.relators),
            sum(len(w) for w in self.relators))

    def total_length(self):
        return sum(len(w) for w in self.relators)

    def is_trivial_presentation(self):
        return self.ngens == 0


def presentation(complex_, basepoint=None):
    """Edge-path group presentation from the 2-skeleton.

    Generators are the edges outside a breadth-first spanning tree (rooted at
    the basepoint, neighbours visited in label order); every triangle
    contributes its boundary word rewritten over the non-tree edges.
    """
    if not complex_.is_connected():
        raise ValueError("fundamental group needs a connected complex")
    verts = complex_.vertices
    if not verts:
        raise ValueError("empty complex")
    root = basepoint if basepoint is not None else verts[0]
    if root not in set(verts):
        raise ValueError("unknown basepoint %r" % (root,))
    edges = complex_.faces(1) if complex_.dimension >= 1 else ()
    tris = complex_.faces(2) if complex_.dimension >= 2 else ()
    adj = defaultdict(list)
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    for v in adj:
        adj[v].sort(key=label_key)
    tree = set()
    seen = {root}
    dq = deque([root])
    while dq:
        u = dq.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                tree.add((u, w) if label_key(u) < label_key(w) else (w, u))
                dq.append(w)
    gen_of = {}
    for e in edges:
        if e not in tree:
            gen_of[e] = len(gen_of) + 1

    def letter(a, b):
        e = (a, b) if label_key(a) < label_key(b) else (b, a)
        g = gen_of.get(e)
        if g is None:
            return 0
        return g if e == (a, b) else -g

    relators = []
    for a, b, c in tris:
        w = [x for x in (letter(a, b), letter(b, c), letter(c, a)) if x]
        if w:
            relators.append(tuple(w))
    return Presentation(len(gen_of), relators)


# ---------------- Tietze simplification ----------------

class _TietzeState:
    """Live presentation with incremental occurrence bookkeeping, so each
    generator elimination costs time proportional to the words it rewrites."""

    def __init__(self, pres):
        self.alive = set(range(1, pres.ngens + 1))
        self.words = {}
        self.occ = Counter()
        self.rel_of = defaultdict(set)
        self.canon_map = {}
        self.unit_queue = deque()
        self.heap = []
        self.next_id = 0
        for w in pres.relators:
            self.add_word(w)

    def add_word(self, w):
        w = cyclically_reduce(w)
        if not w:
            return
        c = _canonical_cyclic(w)
        if c in self.canon_map:
            return
        rid = self.next_id
        self.next_id += 1
        self.words[rid] = w
        self.canon_map[c] = rid
        for x in w:
            self.occ[abs(x)] += 1
            self.rel_of[abs(x)].add(rid)
        if len(w) == 1:
            self.unit_queue.append(rid)
        else:
            self.push_candidates(rid)

    def remove_word(self, rid):
        w = self.words.pop(rid)
        c = _canonical_cyclic(w)
        if self.canon_map.get(c) == rid:
            del self.canon_map[c]
        for x in w:
            self.occ[abs(x)] -= 1
        for g in {abs(x) for x in w}:
            self.rel_of[g].discard(rid)
        return w

    def push_candidates(self, rid):
        w = self.words[rid]
        cnt = Counter(abs(x) for x in w)
        for g, c in cnt.items():
            if c == 1:
                cost = (self.occ[g] - 1) * (len(w) - 1)
                heapq.heappush(self.heap, (cost, rid, g))

    def kill_generator(self, g):
        """Generator known to be trivial: erase it everywhere."""
        self.alive.discard(g)
        for rid in list(self.rel_of[g]):
            w = self.remove_word(rid)
            self.add_word(tuple(x for x in w if abs(x) != g))

    def eliminate(self, g, rid):
        """Solve the relator `rid` (containing g exactly once) for g and
        substitute everywhere else."""
        w = self.remove_word(rid)
        i = next(j for j, x in enumerate(w) if abs(x) == g)
        rot = w[i + 1:] + w[:i]
        repl = invert_word(rot) if w[i] > 0 else rot
        repl_inv = invert_word(repl)
        self.alive.discard(g)
        for rid2 in list(self.rel_of[g]):
            u = self.remove_word(rid2)
            out = []
            for x in u:
                if x == g:
                    out.extend(repl)
                elif x == -g:
                    out.extend(repl_inv)
                else:
                    out.append(x)
            self.add_word(tuple(out))


def tietze_simplify(pres, max_eliminations=None):
    """Greedy Tietze simplification: drop trivial and duplicate relators,
    erase generators made trivial by length-1 relators, eliminate generators
    that occur exactly once in some relator (cheapest substitution first,
    cost = occurrences elsewhere times replacement length), and finally
    shorten relators against each other by cyclic overlap.  The generator
    count never increases."""
    st = _TietzeState(pres)
    budget = max_eliminations if max_eliminations is not None \
        else 4 * (pres.ngens + 1)
    while budget > 0:
        while st.unit_queue:
            rid = st.unit_queue.popleft()
            w = st.words.get(rid)
            if w is None:
                continue
            if len(w) == 1:
                st.remove_word(rid)
                st.kill_generator(abs(w[0]))
                budget -= 1
        if not st.heap:
            words = [list(w) for w in st.words.values()]
            if _overlap_pass(words):
                for rid in list(st.words):
                    st.remove_word(rid)
                for w in words:
                    st.add_word(tuple(w))
                continue
            break
        cost, rid, g = heapq.heappop(st.heap)
        w = st.words.get(rid)
        if w is None or g not in st.alive:
            continue
        if sum(1 for x in w if abs(x) == g) != 1:
            continue
        true_cost = (st.occ[g] - 1) * (len(w) - 1)
        if true_cost > cost:
            heapq.heappush(st.heap, (true_cost, rid, g))
            continue
        st.eliminate(g, rid)
        budget -= 1

    remap = {g: i + 1 for i, g in enumerate(sorted(st.alive))}
    out = [tuple(remap[x] if x > 0 else -remap[-x] for x in w)
           for w in st.words.values()]
    return Presentation(len(st.alive), sorted(out, key=lambda w: (len(w), w)))


def _overlap_pass(rels):
    """Shorten relators against each other: if more than half of one relator
    appears (cyclically, up to inversion) inside another, rewrite the longer
    one.  In-place; returns True when something shrank."""
    rels.sort(key=len)
    improved = False
    for i in range(len(rels)):
        s = tuple(rels[i])
        if not s:
            continue
        half = len(s) // 2 + 1
        variants = set()
        for u in (s, invert_word(s)):
            for r0 in range(len(s)):
                variants.add(u[r0:] + u[:r0])
        for j in range(len(rels)):
            if i == j or len(rels[j]) < half:
                continue
            w = tuple(rels[j])
            dbl = w + w
            done = False
            for u in variants:
                pre = u[:half]
                for st in range(len(w)):
                    if dbl[st:st + half] == pre:
                        rest = u[half:]
                        cand = cyclically_reduce(
                            invert_word(rest) + dbl[st + half:st + len(w)])
                        if len(cand) < len(w):
                            rels[j] = list(cand)
                            improved = True
                            done = True
                            break
                if done:
                    break
    return improved


def abelianization(pres):
    """(free rank, torsion list) of the abelianized presentation, via the
    Smith normal form of the relator exponent-sum matrix."""
    entries = {}
    for i, w in enumerate(pres.relators):
        row = Counter()
        for x in w:
            row[abs(x)] += 1 if x > 0 else -1
        for g, v in row.items():
            if v:
                entries[(i, g - 1)] = v
    inv, rank = homology.smith_normal_form(entries) if entries else ([], 0)
    return pres.ngens - rank, [x for x in inv if x > 1]


# ---------------- finite groups for the quotient search ----------------

def _field_tables(q):
    """Addition/multiplication/negation/inverse tables for GF(q), q = p^k
    with k <= 3; elements are encoded as integers 0..q-1 (base-p digits of
    the polynomial representative)."""
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, t = 0, q
    while t > 1:
        if t % p:
            raise ValueError("%d is not a prime power" % q)
        t //= p
        k += 1
    if k == 1:
        add = [[(a + b) % p for b in range(p)] for a in range(p)]
        mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        neg = [(-a) % p for a in range(p)]
        inv = [0] + [pow(a, p - 2, p) for a in range(1, p)]
        return add, mul, neg, inv
    if k > 3:
        raise ValueError("GF(p^k) supported only for k <= 3")

    def polmul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] = (out[i + j] + x * y) % p
        return out

    def polmod(a, m):
        a = list(a)
        dm = len(m) - 1
        for i in range(len(a) - 1, dm - 1, -1):
            c = a[i]
            if c:
                for j, y in enumerate(m):
                    a[i - dm + j] = (a[i - dm + j] - c * y) % p
        return a[:dm]

    def has_root(m):
        return any(sum(y * pow(r, j, p) for j, y in enumerate(m)) % p == 0
                   for r in range(p))

    irr = None
    from itertools import product as iproduct
    for tail in iproduct(range(p), repeat=k):
        m = list(tail) + [1]
        if not has_root(m):        # enough for degree 2 and 3
            irr = m
            break

    def dec(n):
        out = []
        for _ in range(k):
            out.append(n % p)
            n //= p
        return out

    def enc(pol):
        n = 0
        for c in reversed(pol):
            n = n * p + c
        return n

    add = [[0] * q for _ in range(q)]
    mul = [[0] * q for _ in range(q)]
    neg = [0] * q
    for a in range(q):
        pa = dec(a)
        neg[a] = enc([(-x) % p for x in pa])
        for b in range(q):
            pb = dec(b)
            add[a][b] = enc([(x + y) % p for x, y in zip(pa, pb)])
            mul[a][b] = enc(polmod(polmul(pa, pb), irr))
    inv = [0] * q
    for a in range(1, q):
        inv[a] = next(b for b in range(1, q) if mul[a][b] == 1)
    return add, mul, neg, inv


class FiniteGroup:
    """Element list with multiplication, inversion, identity, and conjugacy
    class representatives; enough structure for the quotient search."""

    __slots__ = ("name", "elements", "mul", "inv", "identity", "_reps")

    def __init__(self, name, elements, mul, inv, identity):
        self.name = name
        self.elements = elements
        self.mul = mul
        self.inv = inv
        self.identity = identity
        self._reps = None

    def __len__(self):
        return len(self.elements)

    def class_representatives(self):
        """One representative per conjugacy class, via conjugation orbits."""
        if self._reps is not None:
            return self._reps
        mul, inv = self.mul, self.inv
        seen = set()
        reps = []
        for x in self.elements:
            if x in seen:
                continue
            reps.append(x)
            orbit = {x}
            frontier = [x]
            # conjugate by everything once; closure not needed since the
            # orbit of x under all of G is the full class already
            for g in self.elements:
                y = mul(mul(g, x), inv(g))
                orbit.add(y)
            seen |= orbit
        self._reps = reps
        return reps


def symmetric_group(n):
    """S_n on tuples (images of 0..n-1); class representatives come from
    the cycle types, so they need no orbit computation."""
    from itertools import permutations as iperm

    elements = sorted(iperm(range(n)))

    def mul(a, b):            # (a*b)(x) = a(b(x))
        return tuple(a[b[i]] for i in range(n))

    def inv(a):
        out = [0] * n
        for i, x in enumerate(a):
            out[x] = i
        return tuple(out)

    g = FiniteGroup("S%d" % n, elements, mul, inv, tuple(range(n)))

    def partitions(total, most):
        if total == 0:
            yield ()
            return
        for first in range(min(total, most), 0, -1):
            for rest in partitions(total - first, first):
                yield (first,) + rest

    reps = []
    for part in partitions(n, n):
        perm = list(range(n))
        pos = 0
        for cyc in part:
            for i in range(cyc):
                perm[pos + i] = pos + (i + 1) % cyc
            pos += cyc
        reps.append(tuple(perm))
    g._reps = reps
    return g


def psl2(q):
    """PSL(2, q) as canonical +-normalized 2x2 matrices over GF(q)."""
    add, mul_t, neg, inv_t = _field_tables(q)
    two_torsion = neg[1] == 1      # characteristic 2: PSL = SL

    def canon(m):
        if two_torsion:
            return m
        for x in m:
            if x:
                if neg[x] < x:
                    return (neg[m[0]], neg[m[1]], neg[m[2]], neg[m[3]])
                return m
        return m

    els = set()
    one = 1
    for a in range(q):
        for b in range(q):
            for c in range(q):
                bc = mul_t[b][c]
                if a:
                    # d = (1 + b c) / a
                    d = mul_t[add[one][bc]][inv_t[a]]
                    els.add(canon((a, b, c, d)))
                elif bc == neg[one]:
                    for d in range(q):
                        els.add(canon((0, b, c, d)))

    def mul(m1, m2):
        a, b, c, d = m1
        e, f, g, h = m2
        return canon((add[mul_t[a][e]][mul_t[b][g]],
                      add[mul_t[a][f]][mul_t[b][h]],
                      add[mul_t[c][e]][mul_t[d][g]],
                      add[mul_t[c][f]][mul_t[d][h]]))

    def inv(m):
        a, b, c, d = m
        return canon((d, neg[b], neg[c], a))

    return FiniteGroup("PSL(2,%d)" % q, sorted(els), mul, inv, (1, 0, 0, 1))


def parse_targets(spec):
    """Parse a target list like 'sym:2..8,psl2:8,psl2:13,psl2:29,psl2:41'."""
    out = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        kind, _, arg = part.partition(":")
        kind = kind.lower()
        if kind == "sym":
            if ".." in arg:
                lo, hi = arg.split("..")
                out.extend(("sym", n) for n in range(int(lo), int(hi) + 1))
            else:
                out.append(("sym", int(arg)))
        elif kind == "psl2":
            out.append(("psl2", int(arg)))
        else:
            raise ValueError("unknown target kind %r" % kind)
    return out


DEFAULT_TARGETS = (("sym", 2), ("sym", 3), ("sym", 4), ("sym", 5),
                   ("sym", 6), ("psl2", 8), ("psl2", 13), ("psl2", 29),
                   ("psl2", 41), ("sym", 7))


def build_target(desc):
    kind, arg = desc
    if kind == "sym":
        return symmetric_group(arg)
    if kind == "psl2":
        return psl2(arg)
    raise ValueError("unknown target %r" % (desc,))


# ---------------- quotient search ----------------

class QuotientCertificate:
    """Verified homomorphism with nontrivial image into a finite group."""

    __slots__ = ("target", "images", "transcript")

    def __init__(self, target, images, transcript):
        self.target = target
        self.images = images
        self.transcript = transcript

    def __repr__(self):
        return "<QuotientCertificate in %s:%d>" % self.target

    def to_json(self):
        return {"target": "%s:%d" % self.target,
                "images": [list(x) for x in self.images],
                "transcript": self.transcript}


def _syllables(word):
    out = []
    for x in word:
        if out and out[-1][0] == abs(x):
            out[-1][1] += 1 if x > 0 else -1
        else:
            out.append([abs(x), 1 if x > 0 else -1])
    return [(g, e) for g, e in out if e]


def _power(group, x, e):
    m = group.identity
    base = x if e > 0 else group.inv(x)
    for _ in range(abs(e)):
        m = group.mul(m, base)
    return m


def verify_certificate(pres, cert):
    """Re-check a certificate: relators map to the identity and the images
    generate a nontrivial subgroup."""
    group = build_target(cert.target)
    if len(cert.images) != pres.ngens:
        return False
    imgs = [tuple(x) for x in cert.images]
    if all(x == group.identity for x in imgs):
        return False
    for w in pres.relators:
        m = group.identity
        for x in w:
            g = imgs[abs(x) - 1]
            if x < 0:
                g = group.inv(g)
            m = group.mul(m, g)
        if m != group.identity:
            return False
    return True


def finite_quotient_search(pres, targets=DEFAULT_TARGETS, budget_seconds=600,
                           max_generators=4):
    """Search for a homomorphism with nontrivial image into one of the
    target groups; first generator ranges over conjugacy class
    representatives (any homomorphism can be conjugated into that form),
    the rest over all elements.

    Returns a QuotientCertificate or None when every target is exhausted or
    the budget runs out (inconclusive, not a triviality proof).
    """
    if pres.ngens > max_generators:
        raise ValueError("presentation has %d generators; simplify below %d "
                         "before searching" % (pres.ngens, max_generators))
    if pres.ngens == 0:
        return None
    deadline = time.monotonic() + budget_seconds
    if isinstance(targets, str):
        targets = parse_targets(targets)
    sylls = [_syllables(w) for w in pres.relators]
    for desc in targets:
        group = build_target(desc)
        found = _search_in_group(pres, group, sylls, deadline)
        if found is not None:
            cert = QuotientCertificate(
                desc, found,
                "relators checked in %s, |G|=%d" % (group.name, len(group)))
            if not verify_certificate(pres, cert):
                raise AssertionError("certificate failed re-verification")
            return cert
        if time.monotonic() > deadline:
            return None
    return None


def _search_in_group(pres, group, sylls, deadline):
    n = pres.ngens
    reps = group.class_representatives()
    elements = group.elements
    mul = group.mul
    ident = group.identity

    def relators_hold(imgs):
        pows = [dict() for _ in range(n)]
        for s in sylls:
            m = ident
            for g, e in s:
                cache = pows[g - 1]
                t = cache.get(e)
                if t is None:
                    t = _power(group, imgs[g - 1], e)
                    cache[e] = t
                m = mul(m, t)
            if m != ident:
                return False
        return True

    counter = 0
    stack_domain = [reps] + [elements] * (n - 1)

    def rec(imgs):
        nonlocal counter
        if len(imgs) == n:
            if all(x == ident for x in imgs):
                return None
            counter += 1
            if counter % 4096 == 0 and time.monotonic() > deadline:
                raise TimeoutError
            return tuple(imgs) if relators_hold(imgs) else None
        for x in stack_domain[len(imgs)]:
            imgs.append(x)
            got = rec(imgs)
            if got is not None:
                return got
            imgs.pop()
        return None

    try:
        return rec([])
    except TimeoutError:
        return None
