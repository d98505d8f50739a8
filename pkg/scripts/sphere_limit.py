"""Worst grid error of the kappa -> 0 basis limit against Y(n, -m), degree by degree."""

import json

import numpy as np

from fuzzysphere.config import SphereConfig
from fuzzysphere.sphere import normalized_basis_limit, sphere_inner, uniform_grid, ylm


def main(cfg=SphereConfig()):
    TH, PH = uniform_grid(cfg.ntheta, cfg.nphi)
    out = []
    for n in range(cfg.nmax + 1):
        worst, gram = 0.0, 0.0
        for m in range(-n, n + 1):
            B = normalized_basis_limit(n, m, cfg.R)
            worst = max(worst, float(np.abs(B.evaluate(TH, PH, "jform") - (-1) ** n * ylm(n, -m, TH, PH)).max()))
            gram = max(gram, abs(sphere_inner(B, B, route="jform") - 1))
        out.append({"n": n, "grid_error": worst, "norm_error": gram, "ok": worst < cfg.tol})
    print(json.dumps({"R": cfg.R, "grid": f"{cfg.ntheta}x{cfg.nphi}", "degrees": out}, indent=1))


if __name__ == "__main__":
    main()
