import collections
import hashlib
import itertools
import json
import math
import os
import re
import shutil

def filterBundle40(value):
    """Filter one bundle quickly.
    """
    out = json.loads(value)
    out = json.load(value)
    return out
