#include "lrsim/timeseries.hpp"

#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "lrsim/errors.hpp"

namespace lrsim {

const Channel* TimeSeries::find(const std::string& name) const {
  for (const Channel& c : channels)
    if (c.name == name) return &c;
  return nullptr;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string series_to_csv(const TimeSeries& series) {
  std::ostringstream os;
  os << "t";
  for (const Channel& c : series.channels) {
    if (c.is_real)
      os << "," << c.name;
    else
      os << "," << c.name << "_re," << c.name << "_im";
  }
  os << "\n";
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    os << format_double(series.times[k]);
    for (const Channel& c : series.channels) {
      os << "," << format_double(c.samples[k].real());
      if (!c.is_real) os << "," << format_double(c.samples[k].imag());
    }
    os << "\n";
  }
  return os.str();
}

void write_csv(const TimeSeries& series, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw StructuralError("write_csv: cannot open " + path);
  f << series_to_csv(series);
}

namespace {

double parse_double(const std::string& tok) {
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{})
    throw StructuralError("csv: cannot parse number '" + tok + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

TimeSeries series_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw StructuralError("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split(line, ',');
  if (header.empty() || header[0] != "t")
    throw StructuralError("csv: first column must be t");

  TimeSeries series;
  // column index -> (channel index, 0 = real part / single, 1 = imag part)
  std::vector<std::pair<std::size_t, int>> col_map;
  for (std::size_t c = 1; c < header.size(); ++c) {
    const std::string& name = header[c];
    if (ends_with(name, "_im")) {
      const std::string base = name.substr(0, name.size() - 3);
      if (!series.channels.empty() && series.channels.back().name == base) {
        col_map.emplace_back(series.channels.size() - 1, 1);
        continue;
      }
    }
    Channel ch;
    if (ends_with(name, "_re")) {
      ch.name = name.substr(0, name.size() - 3);
      ch.is_real = false;
    } else {
      ch.name = name;
      ch.is_real = true;
    }
    series.channels.push_back(std::move(ch));
    col_map.emplace_back(series.channels.size() - 1, 0);
  }

  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> toks = split(line, ',');
    if (toks.size() != header.size())
      throw StructuralError("csv: ragged row");
    series.times.push_back(parse_double(toks[0]));
    for (std::size_t c = 1; c < toks.size(); ++c) {
      const auto [ci, part] = col_map[c - 1];
      Channel& ch = series.channels[ci];
      if (part == 0)
        ch.samples.emplace_back(parse_double(toks[c]), 0.0);
      else
        ch.samples.back().imag(parse_double(toks[c]));
    }
  }
  return series;
}

TimeSeries read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw StructuralError("read_csv: cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return series_from_csv(os.str());
}

nlohmann::json series_to_json(const TimeSeries& series) {
  nlohmann::json j;
  j["times"] = series.times;
  nlohmann::json chans = nlohmann::json::object();
  for (const Channel& c : series.channels) {
    if (c.is_real) {
      std::vector<double> v(c.samples.size());
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = c.samples[k].real();
      chans[c.name] = v;
    } else {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& z : c.samples) arr.push_back({z.real(), z.imag()});
      chans[c.name] = std::move(arr);
    }
  }
  j["channels"] = std::move(chans);
  return j;
}

}  // namespace lrsim
