#include "pmsim/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "pmsim/error.hpp"

namespace pmsim::output {

namespace {

std::ofstream open(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write '" + path.string() + "'");
    return out;
}

}  // namespace

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[64];
    const auto result = std::to_chars(std::begin(buffer), std::end(buffer), value);
    return {buffer, result.ptr};
}

void write_columns(const std::filesystem::path& path, const std::vector<Column>& columns) {
    if (columns.empty()) return;
    const std::size_t rows = columns.front().values.size();
    for (const auto& c : columns) {
        if (c.values.size() != rows) throw Error(ErrorCode::InvalidConfig, "CSV columns differ in length");
    }
    auto out = open(path);
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c].name;
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << (c ? "," : "") << format_double(columns[c].values[r]);
        }
        out << '\n';
    }
}

void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& matrix) {
    auto out = open(path);
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
        for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
            out << (c ? "," : "") << format_double(matrix(r, c));
        }
        out << '\n';
    }
}

void write_sweep_long(const std::filesystem::path& path, const SweepTable& table) {
    auto out = open(path);
    out << "axis1,axis2,metric,value,error_code\n";
    for (const auto& row : table.rows) {
        for (Metric m : table.spec.metrics) {
            out << format_double(row.value1) << ',' << format_double(row.value2) << ',' << to_string(m)
                << ',' << format_double(row.values.at(m)) << ','
                << (row.error ? to_string(*row.error) : std::string_view{}) << '\n';
        }
    }
}

Eigen::MatrixXd sweep_matrix(const SweepTable& table, Metric metric) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(table.size1()), static_cast<Eigen::Index>(table.size2()));
    m.setConstant(std::numeric_limits<double>::quiet_NaN());
    for (const auto& row : table.rows) {
        m(static_cast<Eigen::Index>(row.index1), static_cast<Eigen::Index>(row.index2)) = row.values.at(metric);
    }
    return m;
}

void write_gnuplot_heatmap(const std::filesystem::path& script, const std::string& matrix_csv,
                           const std::string& x_axis_csv, const std::string& y_axis_csv,
                           const std::string& xlabel, const std::string& ylabel,
                           const std::string& title) {
    auto out = open(script);
    out << "# gnuplot " << script.filename().string() << "\n"
        << "set datafile separator ','\n"
        << "set terminal pngcairo size 900,700\n"
        << "set output '" << script.stem().string() << ".png'\n"
        << "set title '" << title << "'\n"
        << "set xlabel '" << xlabel << "'\n"
        << "set ylabel '" << ylabel << "'\n"
        << "set view map\n"
        << "set palette rgbformulae 33,13,10\n"
        << "xs = system(\"cat " << x_axis_csv << "\")\n"
        << "ys = system(\"cat " << y_axis_csv << "\")\n"
        << "xv(i) = real(word(xs, int(i) + 1))\n"
        << "yv(j) = real(word(ys, int(j) + 1))\n"
        << "plot '" << matrix_csv << "' matrix using (xv($1)):(yv($2)):3 with image notitle\n";
}

void write_gnuplot_lines(const std::filesystem::path& script, const std::string& csv,
                         const std::vector<std::string>& header, const std::vector<LineSpec>& lines,
                         const std::string& xlabel, const std::string& ylabel) {
    auto out = open(script);
    out << "# gnuplot " << script.filename().string() << "\n"
        << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "set terminal pngcairo size 900,600\n"
        << "set output '" << script.stem().string() << ".png'\n"
        << "set xlabel '" << xlabel << "'\n"
        << "set ylabel '" << ylabel << "'\n"
        << "plot ";
    for (std::size_t k = 0; k < lines.size(); ++k) {
        const auto it = std::find(header.begin(), header.end(), lines[k].column);
        if (it == header.end()) throw Error(ErrorCode::InvalidConfig, "unknown CSV column " + lines[k].column);
        const auto index = std::distance(header.begin(), it) + 1;
        out << (k ? ", \\\n     " : "") << "'" << csv << "' using 1:" << index << " with "
            << lines[k].style << " title '" << lines[k].title << "'";
    }
    out << "\n";
}

}  // namespace pmsim::output
