from k3fib.lattice import disc_trivial_signed, shioda_tate_mw_rank
from k3fib.model import WeierstrassModel, validate_k3
from k3fib.tate import classify_all

# y^2 = x^3 - (t^3 + 1) x^2 + t^6 x
m = WeierstrassModel.from_strings("2(t^3 + 1)", "t^6", "0")
print(m.equation())
print(validate_k3(m).kind) # Expected: elliptic

config = classify_all(m)
for line in config.report_lines():
    print(line)

print(f"Fibers: {config.lattice_labels()}") # Expected: ['A11', 'A2', 'D7']
print(f"Sum v(Delta): {config.v_delta_sum}") # Expected: 24
print(f"Trivial lattice discriminant: {disc_trivial_signed(config)}") # Expected: -144
print(f"MW rank: {shioda_tate_mw_rank(config)}") # Expected: 0

# The quasi-elliptic path: y^2 = x^3 + t^3 (t + 1)^4
q = WeierstrassModel.from_strings("0", "0", "t^3 (t + 1)^4")
print(classify_all(q).lattice_labels()) # Expected: ['E6', 'E6', 'E8']
