#include "iris/datasets.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "iris/errors.hpp"

namespace iris {

namespace {

int pgm_token(std::istream& in) {
  // Skips whitespace and '#' comments between header fields.
  int c = in.get();
  while (in) {
    if (c == '#') {
      while (in && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  if (!in) raise("MalformedHeader", "unexpected end of PGM header");
  int value = 0;
  bool digits = false;
  while (in && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    digits = true;
    c = in.get();
  }
  if (!digits) raise("MalformedHeader", "expected integer in PGM header");
  return value;
}

double parse_number(const std::string& tok, int line_no) {
  double v = 0.0;
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end)
    raise("ParseError",
          "line " + std::to_string(line_no) + ": bad number '" + tok + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

Boundary parse_boundary(const std::string& field, int line_no) {
  const std::vector<std::string> tok = split(field, ':');
  const std::string& kind = tok[0];
  if (kind == "circle") {
    if (tok.size() != 4)
      raise("ParseError", "line " + std::to_string(line_no) +
                              ": circle needs cx:cy:r");
    return Boundary::circle({parse_number(tok[1], line_no),
                             parse_number(tok[2], line_no)},
                            parse_number(tok[3], line_no));
  }
  if (kind == "ellipse") {
    if (tok.size() != 6)
      raise("ParseError", "line " + std::to_string(line_no) +
                              ": ellipse needs cx:cy:a:b:rot");
    return Boundary::ellipse({parse_number(tok[1], line_no),
                              parse_number(tok[2], line_no)},
                             parse_number(tok[3], line_no),
                             parse_number(tok[4], line_no),
                             parse_number(tok[5], line_no));
  }
  if (kind == "polygon") {
    if (tok.size() < 7 || tok.size() % 2 == 0)
      raise("ParseError", "line " + std::to_string(line_no) +
                              ": polygon needs at least 3 x:y vertex pairs");
    std::vector<Point2D> vertices;
    for (std::size_t i = 1; i + 1 < tok.size(); i += 2)
      vertices.push_back(
          {parse_number(tok[i], line_no), parse_number(tok[i + 1], line_no)});
    return Boundary::polygon(std::move(vertices));
  }
  raise("ParseError", "line " + std::to_string(line_no) +
                          ": unknown boundary kind '" + kind + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string boundary_to_string(const Boundary& b) {
  std::string out;
  if (b.is_ellipse()) {
    const Ellipse& e = b.as_ellipse();
    if (e.semi_a == e.semi_b && e.rotation == 0.0) {
      out = "circle:" + format_double(e.center.x) + ":" +
            format_double(e.center.y) + ":" + format_double(e.semi_a);
    } else {
      out = "ellipse:" + format_double(e.center.x) + ":" +
            format_double(e.center.y) + ":" + format_double(e.semi_a) + ":" +
            format_double(e.semi_b) + ":" + format_double(e.rotation);
    }
  } else {
    out = "polygon";
    for (const Point2D& v : b.as_polygon().vertices)
      out += ":" + format_double(v.x) + ":" + format_double(v.y);
  }
  return out;
}

template <typename T>
T open_and(const std::filesystem::path& path, auto fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise("ParseError", "cannot open " + path.string());
  return fn(in);
}

void write_file(const std::filesystem::path& path, auto fn) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise("ParseError", "cannot write " + path.string());
  fn(out);
}

}  // namespace

GrayImage read_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '5')
    raise("MalformedHeader", "not a binary P5 PGM");
  const int width = pgm_token(in);
  const int height = pgm_token(in);
  const int maxval = pgm_token(in);
  if (width <= 0 || height <= 0)
    raise("MalformedHeader", "non-positive PGM dimensions");
  if (maxval > 255) raise("UnsupportedMaxval", "only maxval <= 255 supported");
  if (maxval <= 0) raise("MalformedHeader", "non-positive PGM maxval");
  // The single whitespace byte after maxval was already consumed by
  // pgm_token's trailing get().
  GrayImage img = make_image(width, height);
  in.read(reinterpret_cast<char*>(img.pixels.data()),
          static_cast<std::streamsize>(img.pixels.size()));
  if (static_cast<std::size_t>(in.gcount()) != img.pixels.size())
    raise("TruncatedData", "PGM pixel data shorter than header promises");
  return img;
}

GrayImage read_pgm_file(const std::filesystem::path& path) {
  return open_and<GrayImage>(path, [](std::istream& in) { return read_pgm(in); });
}

void write_pgm(std::ostream& out, const GrayImage& image) {
  out << "P5\n" << image.width << " " << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
}

void write_pgm_file(const std::filesystem::path& path, const GrayImage& image) {
  write_file(path, [&](std::ostream& out) { write_pgm(out, image); });
}

std::vector<EyeAnnotation> read_annotations(std::istream& in) {
  std::vector<EyeAnnotation> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> fields = split(line, ',');
    if (fields.size() < 3 || fields.size() > 4)
      raise("ParseError",
            "line " + std::to_string(line_no) + ": expected 3 or 4 fields");
    EyeAnnotation ann;
    ann.image_id = fields[0];
    if (ann.image_id.empty())
      raise("ParseError", "line " + std::to_string(line_no) + ": empty image id");
    ann.pupil = parse_boundary(fields[1], line_no);
    ann.limbic = parse_boundary(fields[2], line_no);
    if (fields.size() == 4) {
      const std::vector<std::string> tok = split(fields[3], ':');
      if (tok.size() != 3 || tok[0] != "point")
        raise("ParseError",
              "line " + std::to_string(line_no) + ": center needs point:x:y");
      ann.center = {parse_number(tok[1], line_no), parse_number(tok[2], line_no)};
    } else {
      ann.center = ann.pupil.centroid();
    }
    validate_annotation(ann);
    out.push_back(std::move(ann));
  }
  return out;
}

std::vector<EyeAnnotation> read_annotations_file(const std::filesystem::path& path) {
  return open_and<std::vector<EyeAnnotation>>(
      path, [](std::istream& in) { return read_annotations(in); });
}

void write_annotations(std::ostream& out,
                       std::span<const EyeAnnotation> annotations) {
  out << "# imageId,pupil,limbic,center\n";
  for (const EyeAnnotation& ann : annotations) {
    out << ann.image_id << "," << boundary_to_string(ann.pupil) << ","
        << boundary_to_string(ann.limbic) << ",point:"
        << format_double(ann.center.x) << ":" << format_double(ann.center.y)
        << "\n";
  }
}

void write_annotations_file(const std::filesystem::path& path,
                            std::span<const EyeAnnotation> annotations) {
  write_file(path, [&](std::ostream& out) { write_annotations(out, annotations); });
}

std::vector<LabeledComparison> read_scores(std::istream& in) {
  std::vector<LabeledComparison> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> fields = split(line, ',');
    if (fields.size() != 4)
      raise("ParseError",
            "line " + std::to_string(line_no) + ": expected idA,idB,label,distance");
    LabeledComparison c;
    c.id_a = fields[0];
    c.id_b = fields[1];
    if (fields[2] == "genuine")
      c.genuine = true;
    else if (fields[2] == "imposter")
      c.genuine = false;
    else
      raise("ParseError", "line " + std::to_string(line_no) +
                              ": label must be genuine or imposter");
    c.distance = parse_number(fields[3], line_no);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<LabeledComparison> read_scores_file(const std::filesystem::path& path) {
  return open_and<std::vector<LabeledComparison>>(
      path, [](std::istream& in) { return read_scores(in); });
}

void write_scores(std::ostream& out, std::span<const LabeledComparison> rows) {
  out << "# idA,idB,label,distance\n";
  for (const LabeledComparison& c : rows) {
    out << c.id_a << "," << c.id_b << ","
        << (c.genuine ? "genuine" : "imposter") << ","
        << format_double(c.distance) << "\n";
  }
}

void write_scores_file(const std::filesystem::path& path,
                       std::span<const LabeledComparison> rows) {
  write_file(path, [&](std::ostream& out) { write_scores(out, rows); });
}

ScoreSet split_scores(std::span<const LabeledComparison> rows) {
  ScoreSet s;
  for (const LabeledComparison& c : rows)
    (c.genuine ? s.genuine : s.imposter).push_back(c.distance);
  return s;
}

namespace {

void put_u32le(std::ostream& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.put(static_cast<char>(v >> (8 * i)));
}

std::uint32_t get_u32le(std::istream& in) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    const int c = in.get();
    if (c == EOF) raise("TruncatedData", "unexpected end of texture file");
    v |= static_cast<std::uint32_t>(c & 0xFF) << (8 * i);
  }
  return v;
}

}  // namespace

void write_texture(std::ostream& out, const NormalizedTexture& texture) {
  out.write("NTX1", 4);
  put_u32le(out, static_cast<std::uint32_t>(texture.width));
  put_u32le(out, static_cast<std::uint32_t>(texture.height));
  for (double v : texture.values) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    for (int i = 0; i < 8; ++i) out.put(static_cast<char>(bits >> (8 * i)));
  }
  out.write(reinterpret_cast<const char*>(texture.flags.data()),
            static_cast<std::streamsize>(texture.flags.size()));
}

NormalizedTexture read_texture(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "NTX1")
    raise("MalformedHeader", "not a texture file");
  NormalizedTexture tex;
  tex.width = static_cast<int>(get_u32le(in));
  tex.height = static_cast<int>(get_u32le(in));
  if (tex.width <= 0 || tex.height <= 0)
    raise("MalformedHeader", "implausible texture dimensions");
  const std::size_t n = static_cast<std::size_t>(tex.width) * tex.height;
  tex.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) {
      const int c = in.get();
      if (c == EOF) raise("TruncatedData", "unexpected end of texture file");
      bits |= static_cast<std::uint64_t>(c & 0xFF) << (8 * k);
    }
    std::memcpy(&tex.values[i], &bits, sizeof bits);
  }
  tex.flags.resize(n);
  in.read(reinterpret_cast<char*>(tex.flags.data()),
          static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n)
    raise("TruncatedData", "texture flag plane truncated");
  return tex;
}

void write_texture_file(const std::filesystem::path& path,
                        const NormalizedTexture& texture) {
  write_file(path, [&](std::ostream& out) { write_texture(out, texture); });
}

NormalizedTexture read_texture_file(const std::filesystem::path& path) {
  return open_and<NormalizedTexture>(
      path, [](std::istream& in) { return read_texture(in); });
}

GrayImage texture_to_image(const NormalizedTexture& texture) {
  GrayImage img = make_image(texture.width, texture.height);
  for (std::size_t i = 0; i < texture.values.size(); ++i) {
    const double v = std::floor(texture.values[i] * 255.0 + 0.5);
    img.pixels[i] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
  }
  return img;
}

std::string eye_of(const std::string& image_id) {
  const std::size_t pos = image_id.rfind('_');
  return pos == std::string::npos ? image_id : image_id.substr(0, pos);
}

Dataset load_dataset(const std::filesystem::path& images_dir,
                     const std::filesystem::path& annotations_file) {
  Dataset ds;
  for (EyeAnnotation& ann : read_annotations_file(annotations_file)) {
    DatasetImage di;
    di.image_id = ann.image_id;
    di.image = read_pgm_file(images_dir / (ann.image_id + ".pgm"));
    di.annotation = std::move(ann);
    ds.images.push_back(std::move(di));
  }
  std::sort(ds.images.begin(), ds.images.end(),
            [](const DatasetImage& a, const DatasetImage& b) {
              return a.image_id < b.image_id;
            });
  return ds;
}

}  // namespace iris
