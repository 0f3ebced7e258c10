"""Sparse Dirichlet series with maximal Bohr strip.

Certificates come back from the extension as JSON text; the helpers here
decode them.
"""

import json

try:
    from . import _bohrlab as _core
except ImportError:  # in-tree build: extension sits next to the package
    import _bohrlab as _core


Series = _core.Series
Error = _core.Error
InvalidInput = _core.InvalidInput
BudgetExceeded = _core.BudgetExceeded


def _cert(text):
    return json.loads(text)


def construct(**kwargs):
    out = _core.construct(**kwargs)
    return {"P": out["P"], "growth": _cert(out["growth"]), "norms": _cert(out["norms"])}


def embed_l1(lambda_, **kwargs):
    image, cert = _core.embed_l1(lambda_, **kwargs)
    return image, _cert(cert)


def embed_l2(lambda_, **kwargs):
    image, cert = _core.embed_l2(lambda_, **kwargs)
    return image, _cert(cert)


def density_perturbation(d1, epsilon, **kwargs):
    out = dict(_core.density_perturbation(d1, epsilon, **kwargs))
    out["homogeneity"] = _cert(out["homogeneity"])
    out["witness_bounds"] = _cert(out["witness_bounds"])
    return out


def membership_witness(d, samples, **kwargs):
    return _cert(_core.membership_witness(d, samples, **kwargs))


def disjointness_certificate(**kwargs):
    return _cert(_core.disjointness_certificate(**kwargs))


def run(command, out, config=None):
    code, summary = _core.run(command, json.dumps(config or {}), str(out))
    return code, json.loads(summary)


nth_prime = _core.nth_prime
omega_tilde = _core.omega_tilde
homogeneous_part = _core.homogeneous_part
h2_norm = _core.h2_norm
h2_inner = _core.h2_inner
partial_abs_sum = _core.partial_abs_sum
evaluate = _core.evaluate
make_blocks = _core.make_blocks
w_exponent = _core.w_exponent
verify = _core.verify
verify_directory = _core.verify_directory
