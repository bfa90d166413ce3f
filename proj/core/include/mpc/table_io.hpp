#pragma once

#include <string>

#include "mpc/tables.hpp"

namespace mpc {

/// Writes both catalogs to a little-endian binary file: a versioned header,
/// every entry as truth table bytes, a length-prefixed postfix encoding of
/// its expression and its cost, and a trailing CRC32 of everything before it.
/// Throws io_error when the file cannot be written.
void save_tables(const table_set& tables, const std::string& path);

/// Reads a file written by save_tables and rebuilds the table_set, verifying
/// the magic, version, checksum and the self-consistency of every entry
/// (expression reproduces the stored truth table and cost). Throws io_error
/// on filesystem failures and format_error on any malformed content.
table_set load_tables(const std::string& path);

}  // namespace mpc
