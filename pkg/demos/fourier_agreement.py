"""Three independent membership tests must agree on every test function.

Run:  python3 demos/fourier_agreement.py
"""
from wcalc.fourier import theorem51_harness
from wcalc.matrices import build_gevrey_matrix

G = build_gevrey_matrix((1.0, 2.0), 200)
rep = theorem51_harness(G)

print(f"{'function':24s} {'derivative':>10s} {'weight-fn':>10s} "
      f"{'fourier':>10s}  agree")
for name, r in rep["functions"].items():
    print(
        f"{name:24s} {r['derivative_side']:>10s} {r['weightfn_side']:>10s} "
        f"{r['fourier_side']:>10s}  {r['agreement']}"
    )
print(f"\nstatus: {rep['status']}, disagreements: {rep['disagreements']}")
