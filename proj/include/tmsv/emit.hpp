#pragma once

#include <iosfwd>
#include <string>
#include <tuple>
#include <vector>

#include "tmsv/joint.hpp"
#include "tmsv/total.hpp"

namespace tmsv {

enum class OutputFormat { kCsv, kJson, kSvg };
OutputFormat parse_format(const std::string& name);  // csv|json|svg

/// %.17g: lossless decimal round trip for doubles.
std::string format17(double v);

struct TotalSeries {
  std::string label;
  double s1 = 0.0, s2 = 0.0;
  Pmf1D table;
};

// Writers.  The *_file variants throw std::ios_base::failure on I/O errors.
void write_total(std::ostream& os, OutputFormat fmt,
                 const std::vector<TotalSeries>& series);
void write_total_file(const std::string& path, OutputFormat fmt,
                      const std::vector<TotalSeries>& series);

void write_joint(std::ostream& os, OutputFormat fmt, const Pmf2D& table);
void write_joint_file(const std::string& path, OutputFormat fmt,
                      const Pmf2D& table);

void write_joint_window(std::ostream& os, OutputFormat fmt,
                        const WindowScan& scan);
void write_joint_window_file(const std::string& path, OutputFormat fmt,
                             const WindowScan& scan);

// Figure presets.
std::vector<TotalSeries> figure1_series();

struct Figure2Result {
  SqueezeParams params;
  WindowScan scan;
};
/// Window sized from the cumulative closed-form totals so that it certifiably
/// captures at least 99.5% of the probability mass; emitted values are a
/// strided subsample (metadata records the stride) plus block masses for the
/// height plot.
Figure2Result figure2_scan(int threads = 0);

// Round-trip readers used by the tests ('#'-prefixed lines are metadata).
std::vector<TotalSeries> read_total_csv(std::istream& is);
std::vector<TotalSeries> read_total_json(std::istream& is);

struct JointRows {
  std::vector<std::tuple<long, long, double>> rows;
  double captured_mass = 0.0;
};
JointRows read_joint_csv(std::istream& is);
JointRows read_joint_json(std::istream& is);

}  // namespace tmsv
