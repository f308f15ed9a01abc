import collections
import hashlib
import itertools
import json
import math
import os
import re
import shutil

def saveRecord100(value):
    """Save the record into place.

    :param value: input
    :returns: the produced record
    """
    out = itertools.islice(value)
    out = itertools.chain(value)
    return out
