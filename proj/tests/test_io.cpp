#include "probmetrics/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "probmetrics/measure.hpp"
#include "probmetrics/sets.hpp"

using namespace probmetrics;

namespace {

DiscreteMeasure split_nu() {
  return make_discrete_measure({Rat(0), Rat(1, 4)}, {Rat(2, 3), Rat(1, 3)});
}

PiecewiseCdf mixed_cdf() {
  return PiecewiseCdf({Rat(0), Rat(1)}, {Rat(1, 2), Rat(1)}, {Rat(1, 2)});
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string write_file(const std::string& name, const std::string& content) {
  std::string path = temp_path(name);
  std::ofstream f(path);
  f << content;
  return path;
}

void expect_error_containing(const Json& j, const std::string& needle) {
  try {
    parse_measure(j, "m");
    FAIL() << "expected a validation error mentioning \"" << needle << "\"";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(MeasureRoundTrip, DiscreteSurvivesEmitThenParse) {
  Measure m{split_nu()};
  Json j = emit_measure(m);
  EXPECT_EQ(j["atoms"][1], "1/4");
  EXPECT_EQ(j["weights"][0], "2/3");
  Measure back = parse_measure(j, "roundtrip");
  ASSERT_TRUE(is_discrete(back));
  EXPECT_EQ(as_discrete(back), split_nu());
}

TEST(MeasureRoundTrip, CdfSurvivesEmitThenParse) {
  Measure m{mixed_cdf()};
  Json j = emit_measure(m);
  Measure back = parse_measure(j, "roundtrip");
  ASSERT_FALSE(is_discrete(back));
  EXPECT_EQ(std::get<PiecewiseCdf>(back), mixed_cdf());
}

TEST(MeasureRoundTrip, SequenceCorpusSurvives) {
  SequenceCorpus c;
  c.measures = {Measure{split_nu()}, Measure{mixed_cdf()}};
  c.limit = Measure{make_discrete_measure({Rat(0)}, {Rat(1)})};
  SequenceCorpus back = parse_sequence(emit_sequence(c), "corpus");
  ASSERT_EQ(back.measures.size(), 2u);
  EXPECT_TRUE(same_measure(back.measures[0], c.measures[0]));
  EXPECT_TRUE(same_measure(back.measures[1], c.measures[1]));
  ASSERT_TRUE(back.limit.has_value());
  EXPECT_TRUE(same_measure(*back.limit, *c.limit));
}

TEST(MeasureParse, AcceptsIntegerLiteralsAndOmittedSlopes) {
  Json j;
  j["atoms"] = Json::array({0, 2});
  j["weights"] = Json::array({"1/2", "1/2"});
  Measure m = parse_measure(j, "m");
  EXPECT_EQ(as_discrete(m).atom(1), 2);

  Json c;
  c["breakpoints"] = Json::array({"0", "1"});
  c["values"] = Json::array({"1/2", "1"});
  Measure f = parse_measure(c, "m");  // slopes default to zero
  EXPECT_EQ(std::get<PiecewiseCdf>(f).value(Rat(1, 2)), Rat(1, 2));
}

TEST(MeasureParse, NamesTheFieldOnMalformedRational) {
  Json j;
  j["atoms"] = Json::array({"0", "1/4"});
  j["weights"] = Json::array({"2/3", "0.33"});
  expect_error_containing(j, "weights[1]");
}

TEST(MeasureParse, ReportsTheWeightSum) {
  Json j;
  j["atoms"] = Json::array({"0", "1"});
  j["weights"] = Json::array({"1/2", "1/3"});
  expect_error_containing(j, "sum 5/6 != 1");
}

TEST(MeasureParse, RejectsEmptyAtoms) {
  Json j;
  j["atoms"] = Json::array();
  j["weights"] = Json::array();
  expect_error_containing(j, "atoms: empty list");
}

TEST(MeasureParse, NamesTheBreakpointWhereTheCdfDecreases) {
  Json j;
  j["breakpoints"] = Json::array({"0", "1/2"});
  j["values"] = Json::array({"3/4", "1/2"});
  expect_error_containing(j, "cdf decreases at breakpoint 1/2");
}

TEST(MeasureParse, RejectsOtherSchemaProblems) {
  Json j;
  j["nothing"] = 1;
  expect_error_containing(j, "expected atoms/weights or breakpoints");

  Json sp;
  sp["space"] = "plane";
  sp["atoms"] = Json::array({"0"});
  sp["weights"] = Json::array({"1"});
  expect_error_containing(sp, "space");

  Json missing;
  missing["atoms"] = Json::array({"0"});
  expect_error_containing(missing, "weights: missing");

  Json lengths;
  lengths["atoms"] = Json::array({"0", "1"});
  lengths["weights"] = Json::array({"1"});
  expect_error_containing(lengths, "expected 2 entries, got 1");

  Json slope;
  slope["breakpoints"] = Json::array({"0", "1"});
  slope["values"] = Json::array({"0", "1"});
  slope["slopes"] = Json::array({"-1"});
  expect_error_containing(slope, "negative slope");
}

TEST(MeasureFiles, UnreadablePathThrows) {
  EXPECT_THROW(parse_measure_file("/nonexistent/dir/m.json"), ValidationError);
  try {
    parse_measure_file("/nonexistent/dir/m.json");
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("unreadable file"), std::string::npos);
  }
}

TEST(MeasureFiles, MalformedJsonNamesTheFile) {
  std::string path = write_file("pm_io_broken.json", "{ not json");
  try {
    parse_measure_file(path);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find(path), std::string::npos);
  }
}

TEST(MeasureFiles, FileRoundTrip) {
  std::string path = write_file("pm_io_nu.json", emit_measure(Measure{split_nu()}).dump());
  Measure back = parse_measure_file(path);
  EXPECT_EQ(as_discrete(back), split_nu());
}

TEST(ReportJson, IntervalEndpointsRenderClosedFlagsAndInfinities) {
  Json open = interval_json(Interval::open(Rat(0), Rat(1)));
  EXPECT_EQ(open["lo"], "0");
  EXPECT_FALSE(open["lo_closed"].get<bool>());
  EXPECT_EQ(open["hi"], "1");

  Json whole = interval_json(Interval::whole_line());
  EXPECT_EQ(whole["lo"], "-inf");
  EXPECT_EQ(whole["hi"], "+inf");
  EXPECT_FALSE(whole.contains("lo_closed"));
}

TEST(ReportJson, NumbersCarryExactAndApproxForms) {
  Json j;
  put_rat(j, "value", Rat(3, 8));
  EXPECT_EQ(j["value"], "3/8");
  EXPECT_DOUBLE_EQ(j["value_approx"].get<double>(), 0.375);
}

TEST(ReportJson, GapRecordIncludesBothCertificates) {
  GapRecord rec = gap_record(detail::split_pair_mu(), detail::split_pair_nu());
  Json j = gap_record_json(rec);
  EXPECT_EQ(j["gap"], "1/2");
  EXPECT_EQ(j["levy"]["value"], "1/2");
  EXPECT_EQ(j["prohorov"]["value"], "1");
  EXPECT_TRUE(j.contains("pi_witness"));
  EXPECT_TRUE(j.contains("levy_witness"));
}

TEST(Csv, WritersEmitHeadersAndRows) {
  InstanceSpec spec;
  spec.seed = 3;
  GapSearchReport rep = levy_prohorov_gap_search(spec, 1);
  std::string audit = audit_csv(rep);
  EXPECT_EQ(audit.find("seed,trial,levy,prohorov,gap\n"), 0u);
  EXPECT_NE(audit.find("3,0,1/2,1,1/2"), std::string::npos);

  std::vector<FrontierRow> rows{{Rat(0), Rat(1, 2), Rat(1, 2)}};
  EXPECT_EQ(frontier_csv(rows), "radius,routable,deficiency\n0,1/2,1/2\n");

  std::vector<ProfilePoint> pts{{1, {Rat(1, 4), true}, {}}};
  EXPECT_EQ(profile_csv(pts), "index,levy,attained\n1,1/4,1\n");
}
