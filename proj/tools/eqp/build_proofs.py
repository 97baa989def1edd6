# Writes the bundled .eqp proof scripts and weak_closure.eqt.
# Usage: python3 tools/eqp/build_proofs.py [DATA_DIR]   (default: data/)
import os
import sys
from chain import *

DATA = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), '..', '..', 'data')
def out(name):
    sub = 'theories' if name.endswith('.eqt') else 'proofs'
    return open(os.path.join(DATA, sub, name), 'w')
a, b, cz = c('@a0'), c('@a1'), c('@a2')
x0, x1, x2 = v(0), v(1), v(2)

MCB = {
  'unit': (imp(E, x0), x0),
  'refl': (imp(x0, x0), E),
  'c_axiom': (imp(x0, imp(x1, x2)), imp(x1, imp(x0, x2))),
  'm_axiom': (imp(imp(imp(imp(x0, x1), x1), x0), imp(imp(imp(x0, x1), x1), x2)), imp(x0, x2)),
}

def tt(p, q): return imp(imp(p, q), q)

# ---- Flattening
P = Proof('mc_flattening', 'MBC', dict(MCB))
xb = tt(a, b)
A1, B1 = imp(xb, cz), imp(a, cz)
P.premise('h1', imp(A1, B1), E, 'xbar z <= x z, with x, y, z frozen to @a0, @a1, @a2')
start = imp(imp(xb, imp(B1, cz)), imp(B1, cz))
n, end = P.chain(start, [
  ('c_axiom', {0: xb, 1: B1, 2: cz}, True, None),
  ('unit', {0: B1}, False, (0, 0)),
  ('unit', {0: B1}, False, (1, 0)),
  ('h1', {}, False, (0, 0, 0)),
  ('h1', {}, False, (1, 0, 0)),
  ('m_axiom', {0: A1, 1: B1, 2: cz}, True, ()),
])
assert end == imp(A1, cz)
out('mc_flattening.eqp').write(P.emit([
  'Flattening for t(x,y) = (x -> y) -> y in MBC-algebras:',
  '(xbar xzz) xzz = (xz xbar z) xzz = xbar zz',
  'by Implicative commutativity, then Monotone exchange with xbar z <= xz.']))

# ---- Closure stability
P = Proof('mc_closure_stability', 'MBC', dict(MCB))
zx, zy = imp(cz, a), imp(cz, b)
zb = tt(cz, b)
zbx, zby = imp(zb, a), imp(zb, b)
W = imp(imp(zy, zx), imp(zy, zbx))
V = imp(imp(zy, zx), imp(zby, zbx))
P.premise('h1', imp(zx, zy), E, 'zx <= zy (x <= y, implication increasing in the second place)')
P.premise('h2', imp(b, cz), E, 'y <= z')
P.premise('h3', imp(b, zb), E, 'y <= zbar')
P.premise('h4', imp(V, W), E, '(zy zx)(zbar y zbar x) <= (zy zx)(zy zbar x), from zy <= zbar y')
P.note('zx zbar x = (zy zx)(zy zbar x)   Monotone exchange, zx <= zy')
s1, e1 = P.chain(imp(zx, zbx), [
  ('m_axiom', {0: zx, 1: zy, 2: zbx}, False, ()),
  ('h1', {}, True, None),
  ('h1', {}, True, None),
  ('unit', {0: zy}, True, None),
  ('unit', {0: zy}, True, None),
])
assert e1 == W, show(e1)
P.note('(zy zx)(zbar y zbar x) = yx yx = e   Monotone exchange twice, Reflexivity')
s2, e2 = P.chain(V, [
  ('unit', {0: cz}, False, (0, 0, 0)),
  ('unit', {0: cz}, False, (0, 1, 0)),
  ('h2', {}, False, (0, 0, 0, 0)),
  ('h2', {}, False, (0, 1, 0, 0)),
  ('m_axiom', {0: b, 1: cz, 2: a}, True, (0,)),
  ('unit', {0: zb}, False, (1, 0, 0)),
  ('unit', {0: zb}, False, (1, 1, 0)),
  ('h3', {}, False, (1, 0, 0, 0)),
  ('h3', {}, False, (1, 1, 0, 0)),
  ('m_axiom', {0: b, 1: zb, 2: a}, True, (1,)),
  ('refl', {0: imp(b, a)}, True, ()),
])
assert e2 == E
P.note('e <= (zy zx)(zy zbar x), so it equals e by Unit-reduction')
s3, e3 = P.chain(W, [
  ('unit', {0: W}, False, ()),
  (s2, {}, False, (0,)),
  ('h4', {}, True, ()),
])
assert e3 == E
P.add(imp(zx, zbx), E, 'trans %d %d' % (s1, s3))
out('mc_closure_stability.eqp').write(P.emit([
  'Closure stability for t(x,y) = (x -> y) -> y in MBC-algebras, reduced to',
  'zx <= zbar x for x <= y <= z (zbar = zyy):',
  'zx zbar x = (zy zx)(zy zbar x) >= (zy zx)(zbar y zbar x) = yx yx = e.',
  'The order step is premise h4.']))

# ---- Anti-symmetry, weak relative closure term t
X_ = lambda p, q: T(T(p, q), p)
WRC = {
  'right_absorption': (T(T(T(x0, x1), x1), T(x0, x1)), T(x0, x1)),
  'flattening': (T(T(x0, x1), T(x0, x2)), T(T(x0, x1), x2)),
  'weak_closure_stability': (T(T(T(X_(x0, x1), T(x0, x1)), x0), T(X_(x0, x1), x0)), T(X_(x0, x1), x0)),
}
xb = T(a, b)
XX = T(xb, a)
hdr = ['Anti-symmetry equationalized for a weak relative closure term t,',
       'x, y frozen to @a0, @a1; xbar = t(x,y), X = t(xbar,x).']

P = Proof('antisym_x_le_xy', 'weak_closure', dict(WRC))
P.premise('hA', T(XX, a), XX, 'X = Xx, Right-absorption upgraded by anti-symmetry')
n, end = P.chain(T(XX, T(XX, b)), [
  ('hA', {}, False, (0,)),
  ('flattening', {0: XX, 1: a, 2: b}, True, ()),
  ('hA', {}, True, (0,)),
])
assert end == T(XX, b)
out('antisym_x_le_xy.eqp').write(P.emit(hdr + ['X <= Xy: X(Xy) = (Xx)(Xy) = (Xx)y = Xy.']))

P = Proof('antisym_xy_le_x', 'weak_closure', dict(WRC))
P.premise('hA', T(XX, a), XX, 'X = Xx')
P.premise('hB', T(xb, b), xb, 'xbar = xbar y, Right-absorption upgraded')
P.premise('hC', T(T(XX, xb), a), XX, '(X xbar)x = X, Closure stability upgraded')
P.note('X xbar = (xbar x)(xbar y) = (xbar x)y = Xy')
l1, e = P.chain(T(XX, xb), [
  ('hB', {}, False, (1,)),
  ('flattening', {0: xb, 1: a, 2: b}, True, ()),
])
assert e == T(XX, b)
P.note('(Xy)X = (Xy)(Xx) = (Xy)x = (X xbar)x = X')
n, e = P.chain(T(T(XX, b), XX), [
  ('hA', {}, False, (1,)),
  ('flattening', {0: XX, 1: b, 2: a}, True, ()),
  (l1, {}, False, (0,)),
  ('hC', {}, True, ()),
])
assert e == XX
out('antisym_xy_le_x.eqp').write(P.emit(hdr + ['Xy <= X.']))

P = Proof('antisym_x_y', 'weak_closure', dict(WRC))
yb = T(b, a)
YY = T(yb, b)
P.premise('hB', T(xb, b), xb, 'xbar = xbar y')
P.premise('hG', T(XX, b), XX, 'X = Xy, the first part')
P.premise('hD', T(b, xb), xb, 'y <= xy')
P.premise('hE', T(a, yb), yb, 'x <= yx')
P.premise('hF', T(yb, T(xb, yb)), T(xb, yb), 'ybar <= xbar ybar')
P.note('ybar xbar = (x ybar)(xy) = (x ybar)y = Y')
l1, e = P.chain(T(yb, xb), [
  ('hE', {}, False, (0,)),
  ('flattening', {0: a, 1: yb, 2: b}, True, ()),
  ('hE', {}, True, (0,)),
])
assert e == YY
P.note('xbar ybar = (y xbar)(yx) = (y xbar)x = X')
l2, e = P.chain(T(xb, yb), [
  ('hD', {}, False, (0,)),
  ('flattening', {0: b, 1: xb, 2: a}, True, ()),
  ('hD', {}, True, (0,)),
])
assert e == XX
P.note('ybar X = X')
l3, e = P.chain(T(yb, XX), [
  (l2, {}, False, (1,)),
  ('hF', {}, True, ()),
  (l2, {}, True, ()),
])
assert e == XX
P.note('X xbar = (xbar x)(xbar y) = (xbar x)y = Xy = X')
l4, e = P.chain(T(XX, xb), [
  ('hB', {}, False, (1,)),
  ('flattening', {0: xb, 1: a, 2: b}, True, ()),
  ('hG', {}, True, ()),
])
assert e == XX
P.note('XY = X(ybar xbar) = (ybar X)(ybar xbar) = (ybar X)xbar = X xbar = X')
n, e = P.chain(T(XX, YY), [
  (l1, {}, False, (1,)),
  (l3, {}, False, (0,)),
  ('flattening', {0: yb, 1: XX, 2: xb}, True, ()),
  (l3, {}, True, (0,)),
  (l4, {}, True, ()),
])
assert e == XX
out('antisym_x_y.eqp').write(P.emit(hdr + ['Y <= X: XY = X, with ybar = t(y,x), Y = t(ybar,y).']))

out('weak_closure.eqt').write('''# Single binary operation t with the weak relative closure equations.
theory weak_closure
sig t : 2;
axiom right_absorption: %s = %s;
axiom flattening: %s = %s;
axiom weak_closure_stability: %s = %s;
''' % tuple(show(u) for k in ['right_absorption', 'flattening', 'weak_closure_stability'] for u in WRC[k]))
