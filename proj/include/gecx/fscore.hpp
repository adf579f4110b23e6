#pragma once

namespace gecx {

// (1 + b^2) p r / (b^2 p + r); 0 when p = r = 0.
inline double fbeta(double precision, double recall, double beta) {
  const double b2 = beta * beta;
  const double denom = b2 * precision + recall;
  if (denom == 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / denom;
}

struct EditCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;

  EditCounts& operator+=(const EditCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend EditCounts operator+(EditCounts a, const EditCounts& b) { return a += b; }
  friend bool operator==(const EditCounts&, const EditCounts&) = default;
};

struct Prf {
  double precision = 1.0;
  double recall = 1.0;
  double f = 1.0;
};

// 0/0 precision and recall resolve to 1.
inline Prf prf(const EditCounts& c, double beta) {
  Prf out;
  out.precision = c.tp + c.fp == 0 ? 1.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  out.recall = c.tp + c.fn == 0 ? 1.0 : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  out.f = fbeta(out.precision, out.recall, beta);
  return out;
}

}  // namespace gecx
