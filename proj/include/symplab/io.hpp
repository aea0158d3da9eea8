#ifndef SYMPLAB_IO_HPP
#define SYMPLAB_IO_HPP

#include <string>

#include "symplab/embedding.hpp"
#include "symplab/grid.hpp"

namespace symplab {

/** Grid fields are stored as flat little-endian float64 binary at
 * <base>.bin, components concatenated, each row-major (x index slower),
 * with a JSON sidecar at <base>.json carrying
 * {kind, N_x, N_y, components}. */
void save_scalar_field(const std::string& base, const ScalarGrid& f);
void save_one_form(const std::string& base, const OneFormGrid& f);
void save_two_form(const std::string& base, const TwoFormGrid& f);
void save_surface_field(const std::string& base, const SurfaceField& f);

ScalarGrid load_scalar_field(const std::string& base);
OneFormGrid load_one_form(const std::string& base);
TwoFormGrid load_two_form(const std::string& base);
SurfaceField load_surface_field(const std::string& base);

/** Embedding files hold a single-line JSON header
 * {n, N_x, N_y, winding} terminated by a newline, followed directly by the
 * binary lift payload: per-point 2n float64, points row-major. */
void save_embedding(const std::string& path, const Embedding& f);
Embedding load_embedding(const std::string& path,
                         std::shared_ptr<const AmbientModel> model);

/** FNV-1a digest of raw bytes, as 16 hex characters; used to tag suite
 * inputs in reports deterministically. */
std::string digest_bytes(const void* data, size_t size);
std::string digest_doubles(const std::vector<double>& v);

} // namespace symplab

#endif
