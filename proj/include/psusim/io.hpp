#pragma once

// File I/O: image ingestion (IDX ubyte and the raw BLNK container) and the
// layer-output CSV dump.

#include <span>
#include <string>

#include "psusim/workload.hpp"

namespace psusim {

/// Loads an image, sniffing the container by magic bytes.
///
/// IDX ubyte (MNIST container): big-endian header 00 00 08 <ndims>, then one
/// u32 per dimension. 2-D files hold a single image; for 3-D files the first
/// image of the set is taken.
///
/// BLNK: magic "BLNK", big-endian u16 height, u16 width, then height*width
/// row-major bytes.
///
/// Throws std::runtime_error on malformed files.
Image load_image(const std::string& path);

/// Writes an image in the BLNK container.
void write_blnk(const std::string& path, const Image& image);

/// Dumps per-filter maps as "filter,row,col,value" CSV rows.
void write_layer_csv(const std::string& path, std::span<const OutputMap> maps);

}  // namespace psusim
