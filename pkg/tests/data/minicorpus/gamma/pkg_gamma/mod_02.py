import collections
import hashlib
import itertools
import json
import math
import os
import re
import shutil

def resolve_config_20(value):
    """Resolve the config into place.

    :param value: input
    :returns: the produced config
    """
    out = json.load(value)
    out = json.dump(value)
    return out
