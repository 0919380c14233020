#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pmsim/sweep.hpp"

namespace pmsim::output {

// Shortest round-trip representation (17 significant digits at most).
std::string format_double(double value);

struct Column {
    std::string name;
    std::vector<double> values;
};

// Columns must share a length.
void write_columns(const std::filesystem::path& path, const std::vector<Column>& columns);

// Plain matrix, one row per line, no header.
void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& matrix);

// Long format: axis1,axis2,metric,value,error_code
void write_sweep_long(const std::filesystem::path& path, const SweepTable& table);
// size1 x size2 matrix of one metric, NaN where the point failed.
Eigen::MatrixXd sweep_matrix(const SweepTable& table, Metric metric);

// Heatmap of `matrix_csv` (rows follow y) against axis files holding one value per line.
void write_gnuplot_heatmap(const std::filesystem::path& script, const std::string& matrix_csv,
                           const std::string& x_axis_csv, const std::string& y_axis_csv,
                           const std::string& xlabel, const std::string& ylabel,
                           const std::string& title);

struct LineSpec {
    std::string column;
    std::string title;
    std::string style = "lines";
};

// Line plot of columns from a CSV written by write_columns (first column is x).
void write_gnuplot_lines(const std::filesystem::path& script, const std::string& csv,
                         const std::vector<std::string>& header, const std::vector<LineSpec>& lines,
                         const std::string& xlabel, const std::string& ylabel);

}  // namespace pmsim::output
