// Static object taxonomy: categories, subclasses, classes and meta-properties.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pragworld {

using CategoryId = std::uint16_t;
using SubclassId = std::uint16_t;

enum class ObjectClass : std::uint8_t { location, receptacle, food, tool, thing };

enum class Meta : std::uint16_t {
  has_inside = 1u << 0,
  has_ontop = 1u << 1,
  has_size = 1u << 2,
  has_color = 1u << 3,
  openable = 1u << 4,
  toggleable = 1u << 5,
  cookable = 1u << 6,
  freezable = 1u << 7,
  sliceable = 1u << 8,
  dustyable = 1u << 9,
  stainable = 1u << 10,
  soakable = 1u << 11,
};

// Dynamic boolean attributes. Bit positions are part of the serialized form.
enum class Flag : std::uint8_t { open, cooked, frozen, dusty, stained, sliced, soaked, toggled };
inline constexpr int kFlagCount = 8;

enum class Size : std::uint8_t { none, large, small };
enum class Color : std::uint8_t { none, red, green, blue };

struct MetaSet {
  std::uint16_t bits = 0;
  bool has(Meta m) const { return (bits & static_cast<std::uint16_t>(m)) != 0; }
  void add(Meta m) { bits |= static_cast<std::uint16_t>(m); }
};

struct CategorySpec {
  std::string name;
  ObjectClass cls;
  SubclassId subclass;
  MetaSet meta;
};

struct SubclassSpec {
  std::string name;
  ObjectClass cls;
  std::vector<CategoryId> categories;
  // Holders allowed at scene sampling time: location categories and receptacle subclasses.
  std::vector<CategoryId> position_locations;
  std::vector<SubclassId> position_receptacles;
};

class Catalog {
 public:
  static const Catalog& instance();

  const std::vector<CategorySpec>& categories() const { return categories_; }
  const std::vector<SubclassSpec>& subclasses() const { return subclasses_; }
  const CategorySpec& category(CategoryId id) const { return categories_.at(id); }
  const SubclassSpec& subclass(SubclassId id) const { return subclasses_.at(id); }

  std::optional<CategoryId> find_category(std::string_view name) const;
  std::optional<SubclassId> find_subclass(std::string_view name) const;
  CategoryId category_id(std::string_view name) const;  // throws on unknown
  SubclassId subclass_id(std::string_view name) const;  // throws on unknown

  std::vector<CategoryId> location_categories() const;
  std::vector<CategoryId> movable_categories() const;

 private:
  Catalog();
  std::vector<CategorySpec> categories_;
  std::vector<SubclassSpec> subclasses_;
};

std::string_view class_name(ObjectClass c);
std::optional<ObjectClass> parse_class(std::string_view name);
std::string_view flag_name(Flag f);
std::optional<Flag> parse_flag(std::string_view name);
Meta flag_meta(Flag f);
std::string_view size_name(Size s);
std::string_view color_name(Color c);
std::optional<Size> parse_size(std::string_view s);
std::optional<Color> parse_color(std::string_view s);

// Action-constraint category groups.
bool is_heater_category(std::string_view name);
bool is_knife_category(std::string_view name);
bool is_cleaning_tool_category(std::string_view name);

}  // namespace pragworld
