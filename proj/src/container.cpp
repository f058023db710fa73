#include "hylo/container.hpp"

#include <unordered_set>

namespace hylo {

namespace {

// Structure tables must stay materializable; anything past this is a
// modelling mistake, not a workload.
constexpr std::size_t kMaxTableSize = 100'000'000;

std::size_t pow_checked(std::size_t base, std::size_t exp) {
  unsigned __int128 acc = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > kMaxTableSize) return npos;
  }
  return static_cast<std::size_t>(acc);
}

}  // namespace

ContainerSpec::ContainerSpec(std::vector<Shape> shapes,
                             const ValidationLimits& limits)
    : shapes_(std::move(shapes)) {
  if (shapes_.empty())
    throw ValidationError("functor must declare at least one shape");
  std::unordered_set<std::string_view> names;
  for (const Shape& s : shapes_) {
    if (s.name.empty()) throw ValidationError("shape name must be nonempty");
    if (!names.insert(s.name).second)
      throw ValidationError("duplicate shape name '" + s.name + "'");
    if (s.arity > limits.max_arity)
      throw ValidationError("shape '" + s.name + "' has arity " +
                            std::to_string(s.arity) + " exceeding the cap of " +
                            std::to_string(limits.max_arity));
  }
}

std::optional<std::size_t> ContainerSpec::find_shape(
    std::string_view name) const {
  for (std::size_t i = 0; i < shapes_.size(); ++i)
    if (shapes_[i].name == name) return i;
  return std::nullopt;
}

std::size_t ContainerSpec::max_arity() const {
  std::size_t m = 0;
  for (const Shape& s : shapes_) m = std::max(m, s.arity);
  return m;
}

std::string ContainerSpec::profile() const {
  std::string out;
  for (const Shape& s : shapes_) {
    if (!out.empty()) out += ' ';
    out += s.name + "/" + std::to_string(s.arity);
  }
  return out;
}

void check_structure(const ContainerSpec& functor, std::size_t carrier_size,
                     const FStructure& fs) {
  if (fs.shape >= functor.size())
    throw UnknownStructure("structure refers to shape index out of range");
  const Shape& s = functor.shape(fs.shape);
  if (fs.args.size() != s.arity)
    throw ValidationError("structure for shape '" + s.name + "' has " +
                          std::to_string(fs.args.size()) +
                          " arguments, expected " + std::to_string(s.arity));
  for (std::size_t a : fs.args)
    if (a >= carrier_size)
      throw UnknownElement("structure argument index out of carrier range");
}

FStructure map_functor(const ContainerSpec& functor,
                       std::span<const std::size_t> h, const FStructure& fs) {
  FStructure out;
  out.shape = fs.shape;
  out.args.reserve(fs.args.size());
  for (std::size_t a : fs.args) {
    if (a >= h.size() || h[a] == npos)
      throw UnknownElement("structure argument " + std::to_string(a) +
                           " is missing from the map");
    out.args.push_back(h[a]);
  }
  (void)functor;
  return out;
}

bool lift_pred(const ContainerSpec& functor, const ElemSet& p,
               const FStructure& fs) {
  (void)functor;
  for (std::size_t a : fs.args)
    if (!p.test(a)) return false;
  return true;
}

bool lift_rel(const ContainerSpec& functor, const PairRel& r,
              const FStructure& fs, const FStructure& gs) {
  (void)functor;
  if (fs.shape != gs.shape) return false;
  for (std::size_t i = 0; i < fs.args.size(); ++i)
    if (!r.test(fs.args[i], gs.args[i])) return false;
  return true;
}

std::size_t fstructure_count(const ContainerSpec& functor,
                             std::size_t carrier_size) {
  std::size_t total = 0;
  for (const Shape& s : functor.shapes()) {
    std::size_t block = pow_checked(carrier_size, s.arity);
    if (block == npos || total > kMaxTableSize - block)
      throw ValidationError("functor table over a carrier of " +
                            std::to_string(carrier_size) +
                            " elements is too large to tabulate");
    total += block;
  }
  return total;
}

std::size_t fstructure_offset(const ContainerSpec& functor,
                              std::size_t carrier_size, std::size_t shape) {
  std::size_t off = 0;
  for (std::size_t i = 0; i < shape; ++i) {
    std::size_t block = pow_checked(carrier_size, functor.shape(i).arity);
    if (block == npos)
      throw ValidationError("functor table too large to tabulate");
    off += block;
  }
  return off;
}

std::size_t fstructure_index(const ContainerSpec& functor,
                             std::size_t carrier_size, const FStructure& fs) {
  std::size_t idx = fstructure_offset(functor, carrier_size, fs.shape);
  std::size_t scale = 1;
  // First argument is the most significant digit: lexicographic order.
  for (std::size_t i = fs.args.size(); i-- > 0;) {
    idx += fs.args[i] * scale;
    scale *= carrier_size;
  }
  return idx;
}

FStructure fstructure_at(const ContainerSpec& functor, std::size_t carrier_size,
                         std::size_t index) {
  for (std::size_t s = 0; s < functor.size(); ++s) {
    std::size_t block = pow_checked(carrier_size, functor.shape(s).arity);
    if (index >= block) {
      index -= block;
      continue;
    }
    FStructure fs;
    fs.shape = s;
    fs.args.assign(functor.shape(s).arity, 0);
    for (std::size_t i = fs.args.size(); i-- > 0;) {
      fs.args[i] = index % carrier_size;
      index /= carrier_size;
    }
    return fs;
  }
  throw UnknownStructure("structure index out of range");
}

std::vector<FStructure> enumerate_fstructures(const ContainerSpec& functor,
                                              std::size_t carrier_size) {
  const std::size_t total = fstructure_count(functor, carrier_size);
  std::vector<FStructure> out;
  out.reserve(total);
  for (std::size_t s = 0; s < functor.size(); ++s) {
    const std::size_t arity = functor.shape(s).arity;
    const std::size_t block = pow_checked(carrier_size, arity);
    for (std::size_t b = 0; b < block; ++b) {
      FStructure fs;
      fs.shape = s;
      fs.args.assign(arity, 0);
      std::size_t rest = b;
      for (std::size_t i = arity; i-- > 0;) {
        fs.args[i] = rest % carrier_size;
        rest /= carrier_size;
      }
      out.push_back(std::move(fs));
    }
  }
  return out;
}

}  // namespace hylo
