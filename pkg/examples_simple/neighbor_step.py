from k3fib.corpus import load_divisor
from k3fib.model import WeierstrassModel
from k3fib.neighbor import neighbor_step

# From fibration 1 to fibration 5 along a divisor of type D10
source = WeierstrassModel.from_strings("2(t^3 + 1)", "t^6", "0")
target = WeierstrassModel.from_strings("-t^3", "t^3", "0")
F = load_divisor("1to5.div")
print(f"F = {F}")
print(f"predicted fiber at infinity: {F.fiber_shape()}") # Expected: D10

result = neighbor_step(source, F, target)
for line in result.report_lines():
    print(line)

print(f"w = {result.parameter}") # Expected: (x)/(t^2)
print(f"identified: {result.identification is not None}") # Expected: True
