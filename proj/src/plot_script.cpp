#include "eqf/sim/plot.hpp"

#include <fstream>
#include <stdexcept>

namespace eqf::sim {

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("plot: cannot open for writing: " + path);
  out << text;
  if (!out) throw std::runtime_error("plot: write failed: " + path);
}

}  // namespace

void write_run_plot_script(const std::string& script_path, const std::string& csv_name) {
  const std::string script = R"PY(#!/usr/bin/env python3
"""Draws the trajectory overlay and error curves from a run CSV."""
import csv
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else ")PY" + csv_name + R"PY("

landmarks = []
rows = []
header = None
with open(path, newline="") as fh:
    for line in fh:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("# landmarks="):
                payload = line.split("=", 1)[1]
                for pair in payload.split(";"):
                    if pair:
                        x, y = pair.split(",")
                        landmarks.append((float(x), float(y)))
            continue
        fields = next(csv.reader([line]))
        if header is None:
            header = fields
        else:
            rows.append([float(v) for v in fields])

if header is None or not rows:
    sys.exit("no data rows in " + path)

col = {name: i for i, name in enumerate(header)}
n_filters = (len(header) - 4) // 5
t = [r[col["t"]] for r in rows]

fig, (ax_traj, ax_pos, ax_ang) = plt.subplots(1, 3, figsize=(16, 5))

ax_traj.plot([r[col["x_true"]] for r in rows], [r[col["y_true"]] for r in rows],
             "k-", linewidth=2, label="true")
for i in range(1, n_filters + 1):
    ax_traj.plot([r[col[f"x_est_{i}"]] for r in rows],
                 [r[col[f"y_est_{i}"]] for r in rows],
                 "--", label=f"filter {i}")
if landmarks:
    ax_traj.plot([p[0] for p in landmarks], [p[1] for p in landmarks],
                 "r*", markersize=10, label="landmarks")
ax_traj.set_xlabel("x [m]")
ax_traj.set_ylabel("y [m]")
ax_traj.set_title("trajectory")
ax_traj.axis("equal")
ax_traj.legend()

floor = 1e-17
for i in range(1, n_filters + 1):
    ax_pos.semilogy(t, [max(r[col[f"pos_err_{i}"]], floor) for r in rows],
                    label=f"filter {i}")
    ax_ang.semilogy(t, [max(r[col[f"ang_err_{i}"]], floor) for r in rows],
                    label=f"filter {i}")
ax_pos.set_xlabel("t [s]")
ax_pos.set_ylabel("position error [m]")
ax_pos.set_title("position error")
ax_pos.legend()
ax_ang.set_xlabel("t [s]")
ax_ang.set_ylabel("angle error [rad]")
ax_ang.set_title("angle error")
ax_ang.legend()

fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=130)
print("wrote", out)
)PY";
  write_text(script_path, script);
}

void write_precision_plot_script(const std::string& script_path, const std::string& csv_name) {
  const std::string script = R"PY(#!/usr/bin/env python3
"""Draws per-origin deviation curves from a precision study CSV."""
import csv
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else ")PY" + csv_name + R"PY("

origins = []
rows = []
header = None
with open(path, newline="") as fh:
    for line in fh:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("# origin="):
                origins.append(line.split("=", 1)[1].split(")")[0] + ")")
            continue
        fields = next(csv.reader([line]))
        if header is None:
            header = fields
        else:
            rows.append([float(v) for v in fields])

if header is None or not rows:
    sys.exit("no data rows in " + path)

t = [r[0] for r in rows]
floor = 1e-12
fig, ax = plt.subplots(figsize=(8, 5))
for i in range(1, len(header)):
    label = origins[i - 1] if i - 1 < len(origins) else header[i]
    ax.semilogy(t, [max(r[i], floor) for r in rows], label=label)
ax.set_xlabel("t [s]")
ax.set_ylabel("position deviation from double reference [m]")
ax.set_title("single-precision deviation by chart origin")
ax.legend()
fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=130)
print("wrote", out)
)PY";
  write_text(script_path, script);
}

}  // namespace eqf::sim
