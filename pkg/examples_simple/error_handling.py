import k3fib
from k3fib.model import SurfacePoint, WeierstrassModel, add_points

# Every error derives from K3FibException; parse errors carry line numbers.
try:
    WeierstrassModel.from_text("a2 = t\na8 = 1\n", source="broken.model")
except k3fib.ParseError as e:
    print(f"Caught expected ParseError: {e}")
    assert e.line == 2

m = WeierstrassModel.from_strings("2(t^3 + 1)", "t^6", "0")
try:
    # (t^3, 0) is not a point of this curve
    add_points(m, SurfacePoint.parse("(t^3 ; 0)"), SurfacePoint.parse("(0 ; 0)"))
except k3fib.ModelError as e:
    print(f"Caught expected ModelError: {e}")

try:
    k3fib.VerifyOptions(jobs=0)
except k3fib.K3FibException as e:
    print(f"Caught expected K3FibException: {e}")
