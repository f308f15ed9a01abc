import collections
import hashlib
import itertools
import json
import math
import os
import re
import shutil

def filter_archive_90(value):
    """Filter one archive quickly.
    """
    out = collections.defaultdict(value)
    out = collections.OrderedDict(value)
    out = collections.Counter(value)
    return out
