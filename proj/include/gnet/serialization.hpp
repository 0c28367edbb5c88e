#pragma once

#include <filesystem>
#include <iosfwd>

#include "gnet/classifier.hpp"

namespace gnet {

/// Current model file version. Readers reject any other value.
inline constexpr int kModelFormatVersion = 1;

/// Line-oriented text envelope shared by all classifier types:
///
///   format gnet-model
///   version 1
///   type gnn | rf-elm | kernel-elm
///   mode binary | multiclass
///   ... type-specific scalars (lambda, gamma, ordering, L, ...) ...
///   m <features>
///   range <min> <max>             (m lines)
///   K <classes>
///   class <raw label>             (K lines, codec order)
///   <matrix name> <rows> <cols>   followed by `rows` lines of row-major values
///
/// Numbers use the shortest round-trip representation, so writing the same
/// model twice gives identical bytes.
void save_model(const AnyModel& model, std::ostream& out);
AnyModel load_model(std::istream& in);

void save_model_file(const AnyModel& model, const std::filesystem::path& path);
AnyModel load_model_file(const std::filesystem::path& path);

}  // namespace gnet
