#include "qudit/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qudit;

namespace {

std::string read_file(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
    return n;
}

TransmissionTrace small_trace() {
    TransmissionTrace tr;
    for (int k = 0; k < 3; ++k) {
        const cplx t(0.1 * k, -0.2 * k);
        tr.omega.push_back(5.0 + 1e-3 * k);
        tr.t.push_back(t);
        tr.abs_t.push_back(std::abs(t));
        tr.phase.push_back(std::arg(t));
    }
    return tr;
}

class TempDir {
public:
    TempDir() {
        path_ = std::filesystem::temp_directory_path() /
                ("qudit_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace

TEST(Num, FixedScientificFormat) {
    EXPECT_EQ(io::num(1.0), "1.000000000000e+00");
    EXPECT_EQ(io::num(-2.5e-7), "-2.500000000000e-07");
    EXPECT_EQ(io::num(-0.0), "0.000000000000e+00");
}

TEST(Csv, Headers) {
    EXPECT_EQ(first_line(io::trace_table({{0, small_trace()}}).str()), "omega_ghz,re_t,im_t,abs_t,phase_rad,state_index");
    ShiftTable st;
    st.shifts = {cplx(1e-3, 0.0), cplx(-2e-3, 1e-5)};
    EXPECT_EQ(io::shift_csv(st).str(),
              "state_index,re_shift_ghz,im_shift_ghz\n"
              "0,1.000000000000e-03,0.000000000000e+00\n"
              "1,-2.000000000000e-03,1.000000000000e-05\n");
    FieldSweep sw;
    sw.b = {0.0, 0.01};
    sw.abs_t = {{0.5, 0.4}, {0.3, 0.2}};
    const std::string s = io::sweep_csv(sw, {3, 7}).str();
    EXPECT_EQ(first_line(s), "b_t,state_index,abs_t");
    EXPECT_EQ(count(s, "\n"), 5u);
    EXPECT_NE(s.find("1.000000000000e-02,7,2.000000000000e-01"), std::string::npos);
}

TEST(Csv, RowWidthChecked) {
    io::CsvTable t({"a", "b"});
    EXPECT_THROW(t.add_row({"1"}), std::invalid_argument);
    t.add_row({"1", "2"});
    EXPECT_EQ(t.rows(), 1u);
}

TEST(Csv, DeterministicBytes) {
    TempDir dir;
    const auto traces = std::vector<std::pair<int, TransmissionTrace>>{{1, small_trace()}, {-1, small_trace()}};
    io::write_csv((dir.path() / "a.csv").string(), io::trace_table(traces));
    io::write_csv((dir.path() / "b.csv").string(), io::trace_table(traces));
    const std::string a = read_file(dir.path() / "a.csv");
    EXPECT_EQ(a, read_file(dir.path() / "b.csv"));
    EXPECT_EQ(count(a, "\n"), 7u);
    EXPECT_EQ(a.find('\r'), std::string::npos);
}

TEST(Io, UnwritablePathThrows) {
    TempDir dir;
    io::write_text((dir.path() / "file").string(), "x");
    EXPECT_THROW(io::write_text((dir.path() / "file" / "nested.csv").string(), "y"), IoError);
    EXPECT_THROW(io::write_text((dir.path() / "missing" / "out.csv").string(), "y"), IoError);
}

TEST(Svg, WellFormedAndEscaped) {
    io::Series s1{"state <0> & \"1\"", {0.0, 1.0, 2.0}, {0.1, 0.5, 0.2}};
    io::Series s2{"flat", {0.0, 1.0}, {NAN, 0.3}};
    const std::string svg = io::svg_plot({s1, s2}, "t & phase", "omega (GHz)", "|t|");
    EXPECT_EQ(svg.rfind("<svg ", 0), 0u);
    EXPECT_EQ(svg.substr(svg.size() - 7), "</svg>\n");
    EXPECT_EQ(count(svg, "<polyline"), 2u);
    EXPECT_EQ(count(svg, "<text"), count(svg, "</text>"));
    EXPECT_NE(svg.find("state &lt;0&gt; &amp; &quot;1&quot;"), std::string::npos);
    EXPECT_EQ(svg.find("nan"), std::string::npos);
    EXPECT_EQ(io::escape_xml("a<b"), "a&lt;b");
    // an empty plot still yields a closed document
    EXPECT_EQ(io::svg_plot({}, "", "", "").substr(io::svg_plot({}, "", "", "").size() - 7), "</svg>\n");
}
