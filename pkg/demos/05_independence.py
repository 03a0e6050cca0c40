"""Four independent, identically distributed binary variables whose pairs are
neither independent nor identically distributed."""

from capergodic import block_independent, identically_distributed, rvs_independent
from capergodic.catalog import five_point_threshold

doc = five_point_threshold()
mu = doc.capacities["mu"]
ys = doc.process.variables

print("Y1..Y4 independent:", rvs_independent(mu, ys).independent)
print("Y1 ~ Y4:", identically_distributed(mu, [ys[0]], [ys[3]]).identical)

split = block_independent(mu, ys, 2)
print("(Y1,Y2) and (Y3,Y4) independent:", split.independent, f"joint {split.joint} vs product {split.product}")

same = identically_distributed(mu, ys[:2], ys[2:])
pairs = ", ".join("(" + ", ".join(str(x) for x in t) + ")" for t in sorted(same.witness))
print("(Y1,Y2) ~ (Y3,Y4):", same.identical, f"on {{{pairs}}}: {same.first} vs {same.second}")
