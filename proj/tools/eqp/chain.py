# Expands rewrite chains into five-rule proof lines.
import sys

def imp(a, b): return ('->', a, b)
def T(a, b): return ('t', a, b)
def c(name): return (name,)
E = c('e')
def v(i): return ('$', i)

def show(t):
    if t[0] == '$': return 'x%d' % t[1]
    if len(t) == 1: return t[0]
    if t[0] == '->': return '(%s -> %s)' % (show(t[1]), show(t[2]))
    return '%s(%s)' % (t[0], ', '.join(show(a) for a in t[1:]))

def subst(t, s):
    if t[0] == '$': return s.get(t[1], t)
    return (t[0],) + tuple(subst(a, s) for a in t[1:])

def find(t, pat, path=()):
    if t == pat: return path
    if t[0] != '$':
        for i, a in enumerate(t[1:]):
            r = find(a, pat, path + (i,))
            if r is not None: return r
    return None

def at(t, path):
    for i in path: t = t[1 + i]
    return t

def replace(t, path, u):
    if not path: return u
    i = path[0]
    args = list(t[1:]); args[i] = replace(args[i], path[1:], u)
    return (t[0],) + tuple(args)

class Proof:
    def __init__(self, name, theory, axioms):
        self.name, self.theory, self.axioms = name, theory, axioms
        self.premises = []
        self.lines = []
        self.comments = {}
    def premise(self, label, l, r, note=None):
        self.premises.append((label, l, r, note))
        self.axioms[label] = (l, r)
    def add(self, l, r, by):
        self.lines.append((l, r, by)); return len(self.lines)
    def note(self, text):
        self.comments[len(self.lines) + 1] = text
    def chain(self, start, steps):
        """steps: (label, sigma, forward, path or None). Returns line of start = end."""
        cur, acc = start, None
        for label, sigma, forward, path in steps:
            if isinstance(label, int):
                li, ri = self.lines[label - 1][0], self.lines[label - 1][1]
            else:
                l, r = self.axioms[label]
                li, ri = subst(l, sigma), subst(r, sigma)
            src, dst = (li, ri) if forward else (ri, li)
            if path is None: path = find(cur, src)
            if path is None or at(cur, path) != src:
                sys.exit('step %s does not apply to %s' % (label, show(cur)))
            if isinstance(label, int):
                n = label
            else:
                sig = ', '.join('x%d := %s' % (k, show(sigma[k])) for k in sorted(sigma))
                n = self.add(li, ri, 'axiom %s [%s]' % (label, sig))
            if not forward: n = self.add(ri, li, 'sym %d' % n)
            if path:
                hole = v(9)
                ctx = replace(cur, path, hole)
                rl = self.add(ctx, ctx, 'refl')
                n = self.add(replace(cur, path, src), replace(cur, path, dst), 'subst %d [%d] []' % (rl, n))
            nxt = replace(cur, path, dst)
            acc = n if acc is None else self.add(start, nxt, 'trans %d %d' % (acc, n))
            cur = nxt
        return acc, cur
    def emit(self, header):
        out = [('# ' + h).rstrip() for h in header]
        out.append('proof %s over %s' % (self.name, self.theory))
        for label, l, r, note in self.premises:
            if note: out.append('# ' + note)
            out.append('premise %s: %s = %s;' % (label, show(l), show(r)))
        for i, (l, r, by) in enumerate(self.lines, 1):
            if i in self.comments: out.append('# ' + self.comments[i])
            out.append('%d: %s = %s by %s;' % (i, show(l), show(r), by))
        return '\n'.join(out) + '\n'
