#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "repstat/cli.hpp"

using namespace repstat;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(field);
      field.clear();
    } else if (c == '\n') {
      row.push_back(field);
      field.clear();
      rows.push_back(row);
      row.clear();
    } else {
      field += c;
    }
  }
  return rows;
}

// Renders a JSON cell the way the CSV writer would.
std::string as_csv_text(const nlohmann::ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return format_real(v.get<double>());
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += as_csv_text(v[i]);
  }
  return s;
}

void expect_parity(std::vector<std::string> args) {
  const auto csv = invoke(args);
  args.insert(args.begin(), {"--format", "json"});
  const auto json = invoke(args);
  ASSERT_EQ(csv.code, 0) << csv.err;
  ASSERT_EQ(json.code, 0) << json.err;
  const auto rows = parse_csv(csv.out);
  const auto doc = nlohmann::ordered_json::parse(json.out);
  ASSERT_EQ(rows.size(), doc["rows"].size() + 1);
  for (std::size_t r = 0; r < doc["rows"].size(); ++r) {
    const auto& obj = doc["rows"][r];
    std::size_t c = 0;
    for (const auto& [key, value] : obj.items()) {
      ASSERT_EQ(rows[0][c], key);
      ASSERT_EQ(rows[r + 1][c], as_csv_text(value)) << key << " row " << r;
      ++c;
    }
    ASSERT_EQ(c, rows[0].size());
  }
}

}  // namespace

TEST(Cli, SweepOfThree) {
  const auto r = invoke({"sym", "sweep", "--n", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"lambda", "dim", "class_size", "ln_dim_sq", "ln_class"}));
  EXPECT_EQ(rows[1][1], "1");
  EXPECT_EQ(rows[2][1], "2");
  EXPECT_EQ(rows[3][1], "1");
  EXPECT_EQ(rows[2][0], "[2,1]");
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(Cli, RowCountsFollowCardinalities) {
  for (int n : {5, 12, 20}) {
    const auto r = invoke({"sym", "sweep", "--n", std::to_string(n)});
    EXPECT_EQ(BigInt(parse_csv(r.out).size() - 1), partition_count(n));
  }
  EXPECT_EQ(parse_csv(invoke({"sym", "layers", "--n", "9"}).out).size(), 10u);
  EXPECT_EQ(parse_csv(invoke({"sym", "angle", "--nmax", "7"}).out).size(), 8u);
  EXPECT_EQ(parse_csv(invoke({"sym", "maxdim", "--nmax", "7"}).out).size(), 8u);
  EXPECT_EQ(parse_csv(invoke({"gl", "classes", "--nmax", "6"}).out).size(), 8u);
  EXPECT_EQ(parse_csv(invoke({"gl", "gow", "--nmax", "6"}).out).size(), 7u);
  EXPECT_EQ(parse_csv(invoke({"sym", "plancherel", "--n", "10", "--count", "37"}).out).size(), 38u);
  EXPECT_EQ(parse_csv(invoke({"sym", "intervals", "--nmin", "5", "--nmax", "9"}).out).size(), 6u);
  EXPECT_EQ(parse_csv(invoke({"sym", "hist", "--n", "10", "--bins", "4"}).out).size(), 5u);
}

TEST(Cli, HistogramConservesPartitionCount) {
  for (const char* what : {"dim", "dimsq", "class"}) {
    const auto rows = parse_csv(invoke({"sym", "hist", "--n", "20", "--bins", "20", "--what", what}).out);
    const auto header = rows[0];
    const auto col = std::find(header.begin(), header.end(), "count") - header.begin();
    ASSERT_LT(static_cast<std::size_t>(col), header.size());
    std::int64_t total = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) total += std::stoll(rows[i][col]);
    EXPECT_EQ(total, 627) << what;
  }
}

TEST(Cli, GaussVerdict) {
  const auto rows = parse_csv(invoke({"gl", "gauss", "--order", "10"}).out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].back(), "true");
}

TEST(Cli, KirillovExcludedPrime) {
  const auto r = invoke({"kirillov", "--alg", "heis3", "--p", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("nilpotency class"), std::string::npos);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
}

TEST(Cli, CapRefusalAndOverride) {
  const auto refused = invoke({"sym", "sweep", "--n", "51"});
  EXPECT_EQ(refused.code, 3);
  EXPECT_NE(refused.err.find("--cap"), std::string::npos);
  EXPECT_EQ(invoke({"sym", "layers", "--n", "12", "--cap", "10"}).code, 3);
  const auto allowed = invoke({"--cap", "12", "sym", "layers", "--n", "12"});
  EXPECT_EQ(allowed.code, 0);
  EXPECT_NE(allowed.err.find("cap"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  for (std::vector<std::string> args : {
           std::vector<std::string>{},
           {"bogus"},
           {"sym"},
           {"sym", "sweep"},
           {"sym", "sweep", "--n", "0"},
           {"sym", "sweep", "--n", "x"},
           {"sym", "intervals", "--n", "10", "--alpha", "0.8", "--beta", "0.4"},
           {"sym", "intervals", "--n", "10", "--alpha", "1.5"},
           {"sym", "hist", "--n", "5", "--what", "nope"},
           {"--format", "xml", "sym", "sweep", "--n", "3"},
           {"kirillov", "--alg", "ut5", "--p", "5"},
           {"kirillov", "--alg", "heis3", "--p", "4"},
           {"gl", "ratio", "--nmax", "3", "--q", "1"},
           {"gl", "ratio", "--nmax", "3", "--q", "abc"},
           {"gl", "census", "--q", "1"},
           {"gl", "sl2", "--q", "4"},
       }) {
    const auto r = invoke(args);
    EXPECT_EQ(r.code, 2) << ::testing::PrintToString(args);
    EXPECT_FALSE(r.err.empty());
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
  }
}

TEST(Cli, HelpExitsCleanly) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sym"), std::string::npos);
}

TEST(Cli, ByteIdenticalReruns) {
  for (std::vector<std::string> args : {
           std::vector<std::string>{"sym", "plancherel", "--n", "50", "--count", "300", "--seed", "7"},
           {"--format", "json", "sym", "plancherel", "--n", "50", "--count", "300", "--seed", "7"},
           {"sym", "hist", "--n", "20", "--bins", "20"},
           {"sym", "intervals", "--nmin", "5", "--nmax", "20", "--alpha", "0.2", "--beta", "0.6"},
           {"gl", "ratio", "--nmax", "12", "--q", "3/2"},
       })
    EXPECT_EQ(invoke(args).out, invoke(args).out);
  auto a = invoke({"sym", "plancherel", "--n", "50", "--count", "5000", "--seed", "7", "--workers", "1"});
  auto b = invoke({"sym", "plancherel", "--n", "50", "--count", "5000", "--seed", "7", "--workers", "3"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, CsvJsonParity) {
  expect_parity({"sym", "sweep", "--n", "6"});
  expect_parity({"sym", "angle", "--nmax", "8"});
  expect_parity({"sym", "maxdim", "--nmax", "8"});
  expect_parity({"sym", "intervals", "--nmin", "5", "--nmax", "12"});
  expect_parity({"sym", "layers", "--n", "10"});
  expect_parity({"sym", "hist", "--n", "12", "--bins", "5"});
  expect_parity({"sym", "plancherel", "--n", "20", "--count", "20"});
  expect_parity({"gl", "classes", "--nmax", "5"});
  expect_parity({"gl", "ratio", "--nmax", "6", "--q", "2"});
  expect_parity({"gl", "census", "--q", "3"});
  expect_parity({"gl", "sl2", "--q", "7"});
  expect_parity({"gl", "gauss", "--order", "10"});
  expect_parity({"kirillov", "--alg", "heis3", "--p", "3"});
}

TEST(Cli, JsonMeta) {
  auto doc = nlohmann::ordered_json::parse(invoke({"--format", "json", "gl", "gauss", "--order", "5"}).out);
  EXPECT_EQ(doc["meta"]["invocation"], "repstat --format json gl gauss --order 5");
  EXPECT_EQ(doc["meta"]["version"], kVersion);
  EXPECT_TRUE(doc["meta"]["seed"].is_null());
  doc = nlohmann::ordered_json::parse(
      invoke({"--format", "json", "sym", "plancherel", "--n", "5", "--count", "3", "--seed", "42"}).out);
  EXPECT_EQ(doc["meta"]["seed"], 42);
  // BigInts travel as decimal strings.
  doc = nlohmann::ordered_json::parse(invoke({"--format", "json", "sym", "sweep", "--n", "25"}).out);
  EXPECT_TRUE(doc["rows"][0]["dim"].is_string());
}

TEST(Cli, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "repstat_cli_test.csv";
  const auto r = invoke({"--out", path.string(), "sym", "sweep", "--n", "4"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), invoke({"sym", "sweep", "--n", "4"}).out);
  std::filesystem::remove(path);
  const auto bad = invoke({"--out", "/nonexistent-dir/x.csv", "sym", "sweep", "--n", "4"});
  EXPECT_EQ(bad.code, 2);
}

TEST(Cli, RatioColumnsAgainstLibrary) {
  const auto rows = parse_csv(invoke({"gl", "ratio", "--nmax", "20", "--q", "2"}).out);
  ASSERT_EQ(rows.size(), 21u);
  EXPECT_EQ(rows[2][1], "8/9");
  EXPECT_EQ(rows[20][1], format_rational(log_constant_ratio(20, 2)));
}

TEST(Cli, CensusFlagsStatedSize) {
  const auto rows = parse_csv(invoke({"gl", "census", "--q", "3"}).out);
  bool saw_stated = false, saw_centralizer = false;
  for (const auto& row : rows) {
    if (row[0] == "check" && row[1] == "classes_stated") {
      saw_stated = true;
      EXPECT_EQ(row.back(), "false");
    }
    if (row[0] == "check" && row[1] == "classes_centralizer") {
      saw_centralizer = true;
      EXPECT_EQ(row.back(), "true");
    }
  }
  EXPECT_TRUE(saw_stated && saw_centralizer);
}
