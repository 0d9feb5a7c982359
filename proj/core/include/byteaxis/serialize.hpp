#pragma once

#include "byteaxis/analyze.hpp"
#include "byteaxis/grid.hpp"

#include <string>
#include <string_view>

namespace byteaxis {

/// Occupied cells only:
///
///     # byteaxis grid
///     # base: oui 08:3c:0c
///     # org: ARRIS Group, Inc.
///     y,x,count,responders,labels
///     40,16,3,,iPhone%205c=3
///
/// `responders` and `labels` are ';'-separated lists; labels are written
/// as name=multiplicity with '%', ';', '=', ',', '"', space, CR and LF
/// percent-encoded. Decoding gives back an equal grid.
std::string grid_to_csv(const ByteAxisGrid& grid);
ByteAxisGrid grid_from_csv(std::string_view text);

/// {"base": {...}, "total": N, "cells": [{"y", "x", "count", "labels", "responders"}]}
/// with occupied cells in row-major order.
std::string grid_to_json(const ByteAxisGrid& grid);
ByteAxisGrid grid_from_json(std::string_view text);

std::string report_to_json(const AllocationReport& report, int indent = 2);
AllocationReport report_from_json(std::string_view text);

/// Several reports as {"reports": [...]}.
std::string reports_to_json(const std::vector<AllocationReport>& reports, int indent = 2);
std::vector<AllocationReport> reports_from_json(std::string_view text);

} // namespace byteaxis
