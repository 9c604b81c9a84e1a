import numpy as np

from numsig.errors import InvalidGeometry, DuplicatePoints
from numsig.geom import TOL


class PolyCurve:
    """
    Ordered point samples of a planar (dimension 2) or space (dimension 3)
    curve. Closed curves wrap their indices; open curves don't.
    `params` optionally carries the parameter value t_i each point was sampled at.
    """

    def __init__(self, points, closed=False, params=None):
        pts = np.array(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] not in (2, 3):
            raise InvalidGeometry("expected an (n, 2) or (n, 3) array of points, got shape %s" % (pts.shape,))
        if not np.all(np.isfinite(pts)):
            bad = int(np.nonzero(~np.all(np.isfinite(pts), axis=1))[0][0])
            raise InvalidGeometry("non-finite coordinates", index=bad)
        pts.setflags(write=False)
        self.points = pts
        self.closed = bool(closed)
        if params is not None:
            params = np.array(params, dtype=float)
            if params.shape != (len(pts),):
                raise InvalidGeometry("params must hold one value per point")
            params.setflags(write=False)
        self.params = params

    def __len__(self):
        return len(self.points)

    @property
    def dimension(self):
        return self.points.shape[1]

    def index(self, i):
        n = len(self.points)
        if self.closed:
            return i % n
        if not 0 <= i < n:
            raise IndexError("index %d outside open curve of %d points" % (i, n))
        return i

    def point(self, i):
        return self.points[self.index(i)]

    def param(self, i):
        if self.params is None:
            return None
        return float(self.params[self.index(i)])

    def window(self, i, behind, ahead):
        """ {offset: point} for offsets -behind..ahead around index i """
        return {k: self.point(i + k) for k in range(-behind, ahead + 1)}

    def admissible_indices(self, behind, ahead):
        """ Indices whose full stencil exists: all of them on a closed curve, the interior on an open one. """
        n = len(self.points)
        if self.closed:
            return range(n) if n >= behind + ahead + 1 else range(0)
        return range(behind, max(behind, n - ahead))

    def duplicate_tolerance(self):
        return TOL * max(1.0, float(np.max(np.abs(self.points))))

    def check_distinct(self):
        """ Raise DuplicatePoints at the first pair of coincident consecutive samples. """
        n = len(self.points)
        last = n if self.closed else n - 1
        tol = self.duplicate_tolerance()
        for i in range(last):
            j = (i + 1) % n
            if np.linalg.norm(self.points[j] - self.points[i]) <= tol:
                raise DuplicatePoints("consecutive samples %d and %d coincide" % (i, j), index=i)

    def transformed(self, matrix, offset):
        """ Image under x -> M x + v, same closure and params. """
        pts = self.points @ np.asarray(matrix, dtype=float).T + np.asarray(offset, dtype=float)
        return PolyCurve(pts, self.closed, self.params)

    def reversed(self):
        params = None if self.params is None else self.params[::-1]
        return PolyCurve(self.points[::-1], self.closed, params)
