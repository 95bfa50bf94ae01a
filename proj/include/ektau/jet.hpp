// Second-order jet of a graph height function at a point.
#pragma once

namespace ektau {

struct SurfaceJet {
  double u = 0;    // height
  double ux = 0;   // first derivatives
  double uy = 0;
  double uxx = 0;  // second derivatives
  double uxy = 0;
  double uyy = 0;
};

}  // namespace ektau
