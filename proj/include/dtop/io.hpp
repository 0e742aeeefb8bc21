#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "dtop/homotopy.hpp"
#include "dtop/multivalued.hpp"

// Text formats. Blank lines and '#' comments are ignored everywhere.
//   image:     dim <n> / [adj <spec>] / [split <n1> ...] / one point per line
//   map:       map / dom <file> / cod <file> / [dom_adj <spec>] / [cod_adj <spec>] / x.. -> y..
//   multimap:  multimap / same headers / x.. -> { y.. ; y.. }
//   homotopy:  homotopy m=<m> / t x.. -> y..
namespace dtop::io {

class FormatError : public Error {
 public:
  FormatError(std::string source, std::size_t line, const std::string& msg);
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

struct ImageFile {
  DigitalImage image;
  std::optional<AdjacencySpec> adj;
  std::vector<std::size_t> split;
  std::string source;

  // Binds the file's adjacency, or `override_adj` when given.
  ImageGraph graph(const std::optional<AdjacencySpec>& override_adj = std::nullopt,
                   std::span<const std::size_t> override_split = {}) const;
};

ImageFile parse_image(std::string_view text, const std::string& source);
ImageFile read_image(const std::filesystem::path& path);
// Writes the fully pinned adjacency and its leaf split when `adj` is given.
std::string format_image(const DigitalImage& image, const AdjacencyOracle* adj = nullptr);
std::string format_image(const ImageGraph& g);

DigitalMap parse_map(std::string_view text, const std::string& source,
                     const std::filesystem::path& base_dir);
DigitalMap read_map(const std::filesystem::path& path);
std::string format_map(const DigitalMap& f, const std::string& dom_file, const std::string& cod_file);

MultiMap parse_multimap(std::string_view text, const std::string& source,
                        const std::filesystem::path& base_dir);
MultiMap read_multimap(const std::filesystem::path& path);
std::string format_multimap(const MultiMap& f, const std::string& dom_file,
                            const std::string& cod_file);

HomotopyWitness parse_homotopy(std::string_view text, const std::string& source,
                               const ImageGraph& dom, const ImageGraph& cod);
std::string format_homotopy(const HomotopyWitness& w);

std::string read_file(const std::filesystem::path& path);

}  // namespace dtop::io
