#include "ibsumm/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>

#include "ibsumm/error.hpp"
#include "ibsumm/text.hpp"

namespace ibsumm {

namespace {

std::string format_double(double x) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, end) : std::to_string(x);
}

double parse_double(std::string_view key, std::string_view value) {
  double x = 0.0;
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc{} || ptr != last || !std::isfinite(x)) {
    throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(value) + "'");
  }
  return x;
}

std::size_t parse_count(std::string_view key, std::string_view value) {
  std::size_t x = 0;
  const auto* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), last, x);
  if (ec != std::errc{} || ptr != last) {
    throw ConfigError(std::string(key) + ": expected a non-negative integer, got '" +
                      std::string(value) + "'");
  }
  return x;
}

std::chrono::milliseconds parse_duration(std::string_view key, std::string_view value) {
  double scale = 1000.0;
  if (value.ends_with("ms")) {
    scale = 1.0;
    value.remove_suffix(2);
  } else if (value.ends_with("s")) {
    value.remove_suffix(1);
  }
  const double x = parse_double(key, trim(value));
  if (x <= 0.0) throw ConfigError(std::string(key) + ": duration must be positive");
  return std::chrono::milliseconds(static_cast<std::int64_t>(std::llround(x * scale)));
}

std::vector<std::string> split_labels(std::string_view value) {
  std::vector<std::string> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    const auto item = trim(value.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::string to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::none: return "none";
    case SearchMode::greedy: return "greedy";
    case SearchMode::beam: return "beam";
  }
  return "?";
}

std::string to_string(RankingMode mode) {
  return mode == RankingMode::eq4 ? "eq4" : "similarity-sum";
}

std::string to_string(ViewSet views) {
  return views == ViewSet::keywords ? "keywords" : "keywords+category";
}

std::string to_string(BackendMode mode) { return mode == BackendMode::offline ? "offline" : "remote"; }

void apply_setting(PipelineConfig& c, std::string_view key, std::string_view raw) {
  const auto value = trim(raw);
  const auto count = [&](std::size_t& field) { field = parse_count(key, value); };

  if (key == "alpha") {
    c.alpha = parse_double(key, value);
  } else if (key == "beta") {
    c.beta = parse_double(key, value);
  } else if (key == "epsilon") {
    c.epsilon = parse_double(key, value);
  } else if (key == "num_keyphrases") {
    count(c.num_keyphrases);
  } else if (key == "keyphrase_min_frequency") {
    count(c.keyphrase_min_frequency);
  } else if (key == "keyphrase_max_words") {
    count(c.keyphrase_max_words);
  } else if (key == "top_n") {
    count(c.top_n);
  } else if (key == "window") {
    count(c.window);
  } else if (key == "k_starts") {
    count(c.k_starts);
  } else if (key == "beam_width") {
    count(c.beam_width);
  } else if (key == "summary_len") {
    count(c.summary_len);
  } else if (key == "min_words") {
    count(c.min_words);
  } else if (key == "max_words") {
    count(c.max_words);
  } else if (key == "search_mode") {
    if (value == "none") c.search_mode = SearchMode::none;
    else if (value == "greedy") c.search_mode = SearchMode::greedy;
    else if (value == "beam") c.search_mode = SearchMode::beam;
    else throw ConfigError("search_mode: expected none|greedy|beam, got '" + std::string(value) + "'");
  } else if (key == "ranking_mode") {
    if (value == "eq4") c.ranking_mode = RankingMode::eq4;
    else if (value == "similarity-sum") c.ranking_mode = RankingMode::similarity_sum;
    else throw ConfigError("ranking_mode: expected eq4|similarity-sum, got '" + std::string(value) + "'");
  } else if (key == "views") {
    if (value == "keywords") c.views = ViewSet::keywords;
    else if (value == "keywords+category") c.views = ViewSet::keywords_category;
    else throw ConfigError("views: expected keywords|keywords+category, got '" + std::string(value) + "'");
  } else if (key == "backend.mode") {
    if (value == "offline") c.backend.mode = BackendMode::offline;
    else if (value == "remote") c.backend.mode = BackendMode::remote;
    else throw ConfigError("backend.mode: expected offline|remote, got '" + std::string(value) + "'");
  } else if (key == "backend.endpoint") {
    c.backend.endpoint = std::string(value);
  } else if (key == "backend.embedding_file") {
    c.backend.embedding_file = std::string(value);
  } else if (key == "backend.timeout") {
    c.backend.timeout = parse_duration(key, value);
  } else if (key == "backend.batch_size") {
    count(c.backend.batch_size);
  } else if (key == "backend.labels") {
    c.backend.labels = split_labels(value);
  } else {
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
  }
}

PipelineConfig parse_config(std::istream& in, PipelineConfig base) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      apply_setting(base, trim(view.substr(0, eq)), view.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path.string());
  return parse_config(in, std::move(base));
}

std::vector<ConfigEntry> config_entries(const PipelineConfig& c) {
  return {
      {"alpha", format_double(c.alpha)},
      {"beta", format_double(c.beta)},
      {"epsilon", format_double(c.epsilon)},
      {"num_keyphrases", std::to_string(c.num_keyphrases)},
      {"keyphrase_min_frequency", std::to_string(c.keyphrase_min_frequency)},
      {"keyphrase_max_words", std::to_string(c.keyphrase_max_words)},
      {"top_n", std::to_string(c.top_n)},
      {"window", std::to_string(c.window)},
      {"k_starts", std::to_string(c.k_starts)},
      {"beam_width", std::to_string(c.beam_width)},
      {"summary_len", std::to_string(c.summary_len)},
      {"min_words", std::to_string(c.min_words)},
      {"max_words", std::to_string(c.max_words)},
      {"search_mode", to_string(c.search_mode)},
      {"ranking_mode", to_string(c.ranking_mode)},
      {"views", to_string(c.views)},
      {"backend.mode", to_string(c.backend.mode)},
      {"backend.endpoint", c.backend.endpoint},
      {"backend.embedding_file", c.backend.embedding_file.string()},
      {"backend.timeout", std::to_string(c.backend.timeout.count()) + "ms"},
      {"backend.batch_size", std::to_string(c.backend.batch_size)},
      {"backend.labels", join(c.backend.labels, ",")},
  };
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (auto& [k, v] : config_entries(PipelineConfig{})) keys.push_back(k);
  return keys;
}

void validate(const PipelineConfig& c) {
  const auto positive = [](std::size_t v, const char* name) {
    if (v == 0) throw ConfigError(std::string(name) + " must be a positive integer");
  };
  if (!(c.alpha >= 0.0)) throw ConfigError("alpha must be >= 0");
  if (!(c.beta >= 0.0)) throw ConfigError("beta must be >= 0");
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
  positive(c.num_keyphrases, "num_keyphrases");
  positive(c.keyphrase_min_frequency, "keyphrase_min_frequency");
  positive(c.top_n, "top_n");
  positive(c.window, "window");
  positive(c.k_starts, "k_starts");
  positive(c.beam_width, "beam_width");
  positive(c.summary_len, "summary_len");
  positive(c.min_words, "min_words");
  positive(c.max_words, "max_words");
  if (c.min_words > c.max_words) throw ConfigError("min_words must not exceed max_words");
}

PipelineConfig effective_config(PipelineConfig config) {
  validate(config);
  if (config.views == ViewSet::keywords) config.alpha = 0.0;
  return config;
}

std::string fingerprint(const PipelineConfig& config) {
  const auto eff = effective_config(config);
  std::uint64_t h = fnv1a("ibsumm-config-v1");
  for (const auto& [k, v] : config_entries(eff)) {
    if (k == "backend.timeout" || k == "backend.batch_size") continue;
    h = fnv1a(k, h);
    h = fnv1a("=", h);
    h = fnv1a(v, h);
    h = fnv1a("\n", h);
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

std::string system_name(const PipelineConfig& config) {
  std::string name = config.views == ViewSet::keywords ? "keywords" : "multiview";
  switch (config.search_mode) {
    case SearchMode::none: name += "_only"; break;
    case SearchMode::greedy: name += "+greedySearch"; break;
    case SearchMode::beam: name += "+beamSearch"; break;
  }
  if (config.ranking_mode == RankingMode::similarity_sum) name += "(simsum)";
  return name;
}

}  // namespace ibsumm
