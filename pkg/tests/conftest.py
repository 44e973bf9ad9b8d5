import sys

# proof transformations recurse on tree height; default limits are tight
sys.setrecursionlimit(100000)
