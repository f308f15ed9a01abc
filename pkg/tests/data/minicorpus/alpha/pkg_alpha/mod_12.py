import collections
import hashlib
import itertools
import json
import math
import os
import re
import shutil

def resolveBundle120(value):
    """Resolve one bundle quickly.
    """
    out = shutil.rmtree(value)
    out = shutil.copy(value)
    out = shutil.move(value)
    return out
