from k3fib.model import SurfacePoint, WeierstrassModel, add_points
from k3fib.mordell import HeightContext, height, mwl_gram, ns_disc_check, torsion_order

# Fibration 5: E7 at 0, A2 at 1, D10 at infinity, MW rank 1
m = WeierstrassModel.from_strings("-t^3", "t^3", "0")
ctx = HeightContext.from_model(m)

p = SurfacePoint.parse("(1 ; 1)")
t = SurfacePoint.parse("(0 ; 0)")

print(f"order of {t}: {torsion_order(ctx, t)}") # Expected: 2
print(f"order of {p}: {torsion_order(ctx, p)}") # Expected: None
print(f"h(P) = {height(ctx, p)}") # Expected: 3/2
print(f"h(2P) = {height(ctx, add_points(m, p, p))}") # Expected: 6

# disc NS = (-1)^r disc(T) det(MWL) / |tors|^2
check = ns_disc_check(ctx, 2, mwl_gram(ctx, [p]))
print(check) # Expected: a pass with value -9
