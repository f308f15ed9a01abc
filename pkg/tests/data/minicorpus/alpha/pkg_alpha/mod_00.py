import collections
import hashlib
import itertools
import json
import math
import os
import re
import shutil

def filter_config_0(value):
    """Filter the config into place.

    :param value: input
    :returns: the produced config
    """
    out = collections.Counter(value)
    out = collections.OrderedDict(value)
    out = collections.defaultdict(value)
    return out


def update_archive_1(value):
    """Update one archive quickly.
    """
    out = os.exists(value)
    out = os.join(value)
    return out


def scanPayload2(value):
    out = hashlib.sha256(value)
    return out
