"""Python front end over the C++ certifier. Channels are dicts in the CLI's JSON format."""

import json

from ._core import (
    EXIT_CERT_FAILURE,
    EXIT_OK,
    EXIT_VALIDATION,
    gaussian_rate,
    lattice_rate,
    run_cli,
)

__all__ = [
    "EXIT_CERT_FAILURE",
    "EXIT_OK",
    "EXIT_VALIDATION",
    "TwrcError",
    "certify",
    "gaussian_rate",
    "lattice_rate",
    "monte_carlo",
    "run_cli",
    "terms",
    "vertices",
]


class TwrcError(RuntimeError):
    def __init__(self, code, message):
        super().__init__(message.strip())
        self.code = code


def _call(args, channel=None, allow_failure=False):
    stdin = json.dumps(channel) if channel is not None else ""
    code, out, err = run_cli(args, stdin)
    if code == EXIT_OK or (allow_failure and code == EXIT_CERT_FAILURE):
        return json.loads(out)
    raise TwrcError(code, err)


def terms(channel):
    return _call(["terms", "-"], channel)


def vertices(channel, link="outer"):
    return _call(["vertices", "-", "--link", link], channel)


def certify(channel):
    """Full report; report["pass"] is False when a certificate fails."""
    return _call(["certify", "-"], channel, allow_failure=True)


def monte_carlo(trials, seed):
    return _call(["certify", "--random", str(trials), str(seed)], allow_failure=True)
