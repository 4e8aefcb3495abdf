#include "pragworld/catalog.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace pragworld {

namespace {

struct SubclassRow {
  const char* name;
  ObjectClass cls;
  std::vector<const char*> categories;
};

// Taxonomy rows. Location subclasses group by the relation they support.
const std::vector<SubclassRow>& taxonomy() {
  static const std::vector<SubclassRow> rows = {
      {"surface", ObjectClass::location,
       {"floor", "countertop", "sofa", "bed", "stove", "table", "shelf", "toilet"}},
      {"enclosure", ObjectClass::location,
       {"cabinet", "bathtub", "microwave", "oven", "dishwasher", "refrigerator", "sink", "pool"}},

      {"furniture", ObjectClass::receptacle, {"highchair", "chair", "seat"}},
      {"vessel", ObjectClass::receptacle, {"bottle", "jar", "kettle", "caldron"}},
      {"tableware", ObjectClass::receptacle, {"bowl", "mug", "plate", "dish", "cup"}},
      {"utensil", ObjectClass::receptacle, {"saucepan", "pan", "casserole"}},
      {"bag", ObjectClass::receptacle, {"duffel bag", "sack", "backpack", "briefcase"}},
      {"bucket", ObjectClass::receptacle, {"bucket"}},
      {"tray", ObjectClass::receptacle, {"tray"}},
      {"basket", ObjectClass::receptacle, {"basket"}},
      {"box", ObjectClass::receptacle, {"box"}},
      {"package", ObjectClass::receptacle, {"package"}},
      {"ashcan", ObjectClass::receptacle, {"ashcan"}},
      {"Xmas stocking", ObjectClass::receptacle, {"Xmas stocking"}},
      {"Xmas tree", ObjectClass::receptacle, {"Xmas tree"}},

      {"fruit", ObjectClass::food,
       {"apple", "banana", "melon", "grape", "lemon", "orange", "peach", "strawberry", "raspberry",
        "date", "olive", "chestnut"}},
      {"vegetable", ObjectClass::food,
       {"carrot", "radish", "tomato", "broccoli", "mushroom", "onion", "lettuce", "pumpkin"}},
      {"drink", ObjectClass::food, {"pop", "beer", "juice", "water", "milk"}},
      {"protein", ObjectClass::food, {"beef", "chicken", "pork", "fish", "egg"}},
      {"flavorer", ObjectClass::food,
       {"catsup", "sauce", "parsley", "tea bag", "sugar", "vegetable oil"}},
      {"baked food", ObjectClass::food, {"cracker", "bread", "cookie", "cake"}},
      {"snack", ObjectClass::food, {"chip", "hamburger", "sandwich", "candy"}},
      {"prepared food", ObjectClass::food, {"oatmeal", "sushi", "salad", "soup", "pasta"}},

      {"metal tool", ObjectClass::tool, {"carving knife", "hammer", "screwdriver", "scraper", "saw"}},
      {"electric equipment", ObjectClass::tool, {"printer", "scanner", "facsimile", "modem"}},
      {"electrical device", ObjectClass::tool,
       {"calculator", "headset", "earphone", "mouse", "alarm"}},
      {"toiletry", ObjectClass::tool, {"toothbrush", "perfume", "makeup"}},
      {"writing tool", ObjectClass::tool, {"highlighter", "marker", "pen", "pencil"}},
      {"piece of cloth", ObjectClass::tool, {"dishtowel", "hand towel", "rag"}},
      {"cleaning tool", ObjectClass::tool, {"scrub brush", "broom", "vacuum"}},
      {"cleansing", ObjectClass::tool, {"soap", "shampoo", "detergent", "toothpaste"}},
      {"cutlery", ObjectClass::tool, {"fork", "spoon", "knife"}},
      {"illumination tool", ObjectClass::tool, {"lamp", "candle"}},

      {"decoration", ObjectClass::thing,
       {"necklace", "bracelet", "jewelry", "bow", "wreath", "ribbon"}},
      {"paper product", ObjectClass::thing,
       {"hardback", "notebook", "book", "newspaper", "painting", "pad", "document"}},
      {"footwear", ObjectClass::thing, {"gym shoe", "sandal", "shoe", "sock"}},
      {"headwear", ObjectClass::thing, {"hat", "sunglass"}},
      {"clothing", ObjectClass::thing, {"shirt", "sweater", "underwear", "apparel"}},
      {"building material", ObjectClass::thing, {"tile", "plywood"}},
      {"plaything", ObjectClass::thing, {"cube", "ball"}},
  };
  return rows;
}

// Meta-property table: each entry lists class, subclass or category names.
struct MetaRow {
  Meta meta;
  std::vector<const char*> names;
};

const std::vector<MetaRow>& meta_rows() {
  static const std::vector<MetaRow> rows = {
      {Meta::has_inside,
       {"cabinet", "bathtub", "microwave", "oven", "dishwasher", "refrigerator", "sink", "pool",
        "vessel", "tableware", "utensil", "bag", "basket", "box", "package", "ashcan", "bucket",
        "Xmas stocking"}},
      {Meta::has_ontop,
       {"floor", "countertop", "sofa", "bed", "stove", "table", "shelf", "toilet", "furniture",
        "tray", "Xmas tree"}},
      {Meta::has_size, {"tableware", "tray", "box", "package", "ashcan"}},
      {Meta::has_color, {"furniture", "vessel", "bag", "basket", "box", "package"}},
      {Meta::openable,
       {"cabinet", "microwave", "oven", "dishwasher", "refrigerator", "vessel", "bag", "box",
        "package"}},
      {Meta::toggleable,
       {"microwave", "oven", "dishwasher", "refrigerator", "stove", "sink", "electric equipment"}},
      {Meta::cookable, {"food"}},
      {Meta::freezable, {"food"}},
      {Meta::sliceable, {"fruit", "vegetable", "protein"}},
      {Meta::dustyable, {"location", "receptacle", "thing"}},
      {Meta::stainable, {"location"}},
      {Meta::soakable, {"piece of cloth", "clothing"}},
  };
  return rows;
}

struct PositionRow {
  const char* subclass;
  std::vector<const char*> holders;  // location categories or receptacle subclasses
};

const std::vector<PositionRow>& position_rows() {
  static const std::vector<PositionRow> rows = {
      {"furniture", {"floor"}},
      {"vessel", {"countertop", "table", "cabinet"}},
      {"tableware", {"countertop", "table", "cabinet", "dishwasher", "refrigerator", "sink"}},
      {"utensil", {"countertop", "table", "cabinet", "dishwasher", "refrigerator", "sink"}},
      {"bag", {"floor", "countertop", "table", "sofa", "bed"}},
      {"bucket", {"floor", "countertop", "table"}},
      {"tray", {"countertop", "table", "cabinet", "refrigerator"}},
      {"basket", {"floor", "countertop", "table", "shelf", "cabinet", "sofa", "bed"}},
      {"box", {"floor", "countertop", "table", "shelf", "cabinet", "sofa", "bed"}},
      {"package", {"floor", "countertop", "table", "shelf", "cabinet", "sofa", "bed"}},
      {"ashcan", {"floor"}},
      {"Xmas tree", {"floor"}},
      {"Xmas stocking", {"floor", "countertop", "table", "shelf", "cabinet", "sofa", "bed"}},
      {"fruit", {"table", "countertop", "refrigerator", "utensil"}},
      {"vegetable", {"table", "countertop", "refrigerator", "stove", "utensil"}},
      {"drink", {"table", "countertop", "refrigerator", "cabinet", "bag"}},
      {"protein", {"table", "countertop", "refrigerator", "stove", "utensil"}},
      {"flavorer", {"table", "countertop", "refrigerator", "cabinet", "bag"}},
      {"baked food", {"table", "countertop", "refrigerator", "oven", "tray"}},
      {"snack", {"table", "countertop", "refrigerator", "microwave", "tray"}},
      {"prepared food", {"table", "countertop", "refrigerator", "microwave", "tray"}},
      {"metal tool", {"countertop", "table", "cabinet", "shelf", "furniture"}},
      {"electric equipment", {"countertop", "table", "cabinet", "shelf", "furniture"}},
      {"electrical device", {"countertop", "table", "cabinet", "shelf", "furniture"}},
      {"toiletry", {"cabinet", "toilet", "bathtub", "sink", "pool", "bag"}},
      {"writing tool", {"countertop", "table", "cabinet", "shelf", "bag"}},
      {"piece of cloth", {"cabinet", "toilet", "bathtub", "sink", "pool", "bucket"}},
      {"cleaning tool", {"cabinet", "toilet", "bathtub", "sink", "pool", "bucket"}},
      {"cleansing", {"cabinet", "toilet", "bathtub", "sink", "pool", "bucket"}},
      {"cutlery", {"countertop", "table", "cabinet", "dishwasher", "refrigerator", "utensil"}},
      {"illumination tool", {"countertop", "table", "sofa", "bed", "shelf"}},
      {"decoration", {"cabinet", "sofa", "bed", "package"}},
      {"paper product", {"cabinet", "sofa", "bed", "package"}},
      {"footwear", {"cabinet", "floor"}},
      {"headwear", {"cabinet", "sofa", "bed", "package"}},
      {"clothing", {"cabinet", "sofa", "bed", "package"}},
      {"building material", {"pool"}},
      {"plaything", {"cabinet", "sofa", "bed", "package"}},
  };
  return rows;
}

constexpr std::array<std::string_view, 5> kClassNames = {"location", "receptacle", "food", "tool",
                                                         "thing"};
constexpr std::array<std::string_view, kFlagCount> kFlagNames = {
    "open", "cooked", "frozen", "dusty", "stained", "sliced", "soaked", "toggled"};

}  // namespace

Catalog::Catalog() {
  for (const auto& row : taxonomy()) {
    SubclassSpec sub{row.name, row.cls, {}, {}, {}};
    const auto sid = static_cast<SubclassId>(subclasses_.size());
    for (const char* cat : row.categories) {
      sub.categories.push_back(static_cast<CategoryId>(categories_.size()));
      categories_.push_back(CategorySpec{cat, row.cls, sid, {}});
    }
    subclasses_.push_back(std::move(sub));
  }
  for (const auto& row : meta_rows()) {
    for (const char* name : row.names) {
      bool matched = false;
      for (auto& cat : categories_) {
        const auto& sub = subclasses_[cat.subclass];
        if (cat.name == name || sub.name == name || class_name(cat.cls) == name) {
          cat.meta.add(row.meta);
          matched = true;
        }
      }
      if (!matched) throw std::logic_error("meta table names unknown entry: " + std::string(name));
    }
  }
  for (const auto& row : position_rows()) {
    auto& sub = subclasses_[subclass_id(row.subclass)];
    for (const char* holder : row.holders) {
      if (auto cid = find_category(holder); cid && categories_[*cid].cls == ObjectClass::location) {
        sub.position_locations.push_back(*cid);
      } else {
        sub.position_receptacles.push_back(subclass_id(holder));
      }
    }
  }
}

const Catalog& Catalog::instance() {
  static const Catalog catalog;
  return catalog;
}

std::optional<CategoryId> Catalog::find_category(std::string_view name) const {
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    if (categories_[i].name == name) return static_cast<CategoryId>(i);
  }
  return std::nullopt;
}

std::optional<SubclassId> Catalog::find_subclass(std::string_view name) const {
  for (std::size_t i = 0; i < subclasses_.size(); ++i) {
    if (subclasses_[i].name == name) return static_cast<SubclassId>(i);
  }
  return std::nullopt;
}

CategoryId Catalog::category_id(std::string_view name) const {
  if (auto id = find_category(name)) return *id;
  throw std::invalid_argument("unknown category: " + std::string(name));
}

SubclassId Catalog::subclass_id(std::string_view name) const {
  if (auto id = find_subclass(name)) return *id;
  throw std::invalid_argument("unknown subclass: " + std::string(name));
}

std::vector<CategoryId> Catalog::location_categories() const {
  std::vector<CategoryId> out;
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    if (categories_[i].cls == ObjectClass::location) out.push_back(static_cast<CategoryId>(i));
  }
  return out;
}

std::vector<CategoryId> Catalog::movable_categories() const {
  std::vector<CategoryId> out;
  for (std::size_t i = 0; i < categories_.size(); ++i) {
    if (categories_[i].cls != ObjectClass::location) out.push_back(static_cast<CategoryId>(i));
  }
  return out;
}

std::string_view class_name(ObjectClass c) { return kClassNames[static_cast<int>(c)]; }

std::optional<ObjectClass> parse_class(std::string_view name) {
  for (std::size_t i = 0; i < kClassNames.size(); ++i) {
    if (kClassNames[i] == name) return static_cast<ObjectClass>(i);
  }
  return std::nullopt;
}

std::string_view flag_name(Flag f) { return kFlagNames[static_cast<int>(f)]; }

std::optional<Flag> parse_flag(std::string_view name) {
  for (std::size_t i = 0; i < kFlagNames.size(); ++i) {
    if (kFlagNames[i] == name) return static_cast<Flag>(i);
  }
  return std::nullopt;
}

Meta flag_meta(Flag f) {
  switch (f) {
    case Flag::open: return Meta::openable;
    case Flag::cooked: return Meta::cookable;
    case Flag::frozen: return Meta::freezable;
    case Flag::dusty: return Meta::dustyable;
    case Flag::stained: return Meta::stainable;
    case Flag::sliced: return Meta::sliceable;
    case Flag::soaked: return Meta::soakable;
    case Flag::toggled: return Meta::toggleable;
  }
  throw std::logic_error("bad flag");
}

std::string_view size_name(Size s) {
  switch (s) {
    case Size::large: return "large";
    case Size::small: return "small";
    default: return "";
  }
}

std::string_view color_name(Color c) {
  switch (c) {
    case Color::red: return "red";
    case Color::green: return "green";
    case Color::blue: return "blue";
    default: return "";
  }
}

std::optional<Size> parse_size(std::string_view s) {
  if (s == "large") return Size::large;
  if (s == "small") return Size::small;
  return std::nullopt;
}

std::optional<Color> parse_color(std::string_view s) {
  if (s == "red") return Color::red;
  if (s == "green") return Color::green;
  if (s == "blue") return Color::blue;
  return std::nullopt;
}

bool is_heater_category(std::string_view name) {
  return name == "microwave" || name == "oven" || name == "stove";
}

bool is_knife_category(std::string_view name) { return name == "knife" || name == "carving knife"; }

bool is_cleaning_tool_category(std::string_view name) {
  static constexpr std::array<std::string_view, 6> tools = {
      "rag", "dishtowel", "hand towel", "scrub brush", "vacuum", "broom"};
  return std::find(tools.begin(), tools.end(), name) != tools.end();
}

}  // namespace pragworld
