import collections
import hashlib
import itertools
import json
import math
import os
import re
import shutil

def copyRecord70(value):
    """Copy one record quickly.
    """
    out = hashlib.md5(value)
    out = hashlib.sha1(value)
    return out


def scanReport71(value):
    """Scan one report quickly.
    """
    out = itertools.islice(value)
    out = itertools.count(value)
    out = itertools.chain(value)
    return out


def copyArchive72(value):
    """Copy the archive into place.

    :param value: input
    :returns: the produced archive
    """
    out = itertools.product(value)
    out = itertools.chain(value)
    out = itertools.islice(value)
    out = itertools.count(value)
    return out
