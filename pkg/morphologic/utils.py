"""morphologic - Utilities

Copyright (c) 2024 morphologic developers
"""

import hashlib
import json
import logging
import sys
from concurrent import futures

from tqdm import tqdm

log = logging.getLogger(__name__)


def parallel(fn, workers=4, identifiers=None, args=None, kwargs=None):
    """Runs given function in separate threads for each argument/s given

    Results come back in the order of the arguments, no matter in which
    order the workers finish, so callers can merge them deterministically.

    :param: fn: Function to execute
    :param: workers: How many parallel worker threads
    :param: identifiers: List of identifiers that will be returned together
                         with the corresponding results in the form of a dict
    :param: args: List of lists to be passed as *args to each fn call
    :param: kwargs: List of dicts to be passed as **kwargs to each fn call
    """
    if args is not None and kwargs is not None:
        err = 'Amount of args must match those of kwargs'
        assert len(args) == len(kwargs), err

    if (args is not None or kwargs is not None) and identifiers is not None:
        err = 'Amount of identifier must match those of kw/args'
        n_args = len(args) if args is not None else len(kwargs)
        assert n_args == len(identifiers), err

    identifiers = [] if identifiers is None else identifiers
    args = [] if args is None else args
    kwargs = [] if kwargs is None else kwargs

    if len(args) == 0 and len(kwargs) == 0:
        return {} if identifiers else []
    if len(args) == 0:
        args = [[] for _ in range(len(kwargs))]
    if len(kwargs) == 0:
        kwargs = [dict() for _ in range(len(args))]

    # A single worker runs inline, which keeps tracebacks readable
    if workers <= 1:
        results = [fn(*a, **k) for a, k in zip(args, kwargs)]
    else:
        with futures.ThreadPoolExecutor(max_workers=workers) as executor:
            _futures = [
                executor.submit(fn, *args[i], **kwargs[i])
                for i in range(len(args))
            ]
            results = [future.result() for future in _futures]

    if identifiers:
        return dict(zip(identifiers, results))
    return results


def progress(iterable, desc, total=None):
    """Wrap a long brute-force loop into a progress bar on stderr

    The bar stays silent when stderr is not a terminal.
    """
    return tqdm(
        iterable,
        desc=desc,
        total=total,
        leave=False,
        disable=not sys.stderr.isatty(),
    )


def element_key(elem):
    """Sort key for element ids of any presheaf

    Plain ids sort lexicographically; pairs from products sort by their
    components.  Anything else falls back to its repr.
    """
    if isinstance(elem, str):
        return (0, elem)
    if isinstance(elem, tuple):
        return (1, tuple(element_key(e) for e in elem))
    return (2, repr(elem))


def to_json(value):
    """Render a JSON document byte-stable for identical inputs"""
    return json.dumps(value, indent=2, sort_keys=True)


def fingerprint(value):
    """Return a SHA-256 fingerprint of a JSON-able value"""
    blob = json.dumps(value, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(blob.encode('utf-8')).hexdigest()
