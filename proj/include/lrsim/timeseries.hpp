#pragma once

#include <complex>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

namespace lrsim {

// Named sampled channel; complex channels are split into _re/_im columns on
// CSV export, real ones get a single column.
struct Channel {
  std::string name;
  bool is_real = false;
  std::vector<std::complex<double>> samples;
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<Channel> channels;

  [[nodiscard]] const Channel* find(const std::string& name) const;
};

// CSV with header `t,<channel>,...`; numbers use the shortest
// representation that round-trips the binary value.
std::string series_to_csv(const TimeSeries& series);
void write_csv(const TimeSeries& series, const std::string& path);

// Parse a CSV produced by series_to_csv. Columns named <x>_re/<x>_im are
// fused back into one complex channel <x>.
TimeSeries series_from_csv(const std::string& text);
TimeSeries read_csv(const std::string& path);

nlohmann::json series_to_json(const TimeSeries& series);

std::string format_double(double v);

}  // namespace lrsim
