"""Small cap square function toolkit: python surface over the C++ core."""

import json as _json

try:
    from smallcap._smallcap import *  # noqa: F401,F403  (installed layout)
    from smallcap import _smallcap as _core
except ImportError:  # build-tree layout: the extension sits on sys.path
    from _smallcap import *  # noqa: F401,F403
    import _smallcap as _core

__all__ = [name for name in dir(_core) if not name.startswith("_")] + ["sweep"]


def sweep(curve, exponent, p, R_list, backend="indicator", example="", jobs=1):
    """Run an R-sweep and return the report as a dict."""
    return _json.loads(
        _core.run_sweep(curve, float(exponent), float(p), [float(R) for R in R_list], backend, example, jobs)
    )
