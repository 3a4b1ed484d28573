#include "arena/games/gandalf.h"

namespace arena {

const std::vector<std::string_view>& GandalfWordlist() {
  static const std::vector<std::string_view> kWords = {
    "acorn", "almond", "amber", "anchor", "antler", "apple", "apron", "arrow",
    "attic", "autumn", "avocado", "badge", "bakery", "balloon", "bamboo",
    "banana", "banner", "barrel", "basket", "beacon", "beaver", "beetle",
    "bell", "bicycle", "biscuit", "blanket", "blizzard", "blossom", "bonfire",
    "bottle", "boulder", "bracelet", "breeze", "bridge", "bristle", "bronze",
    "brook", "bucket", "buffalo", "butter", "button", "cabbage", "cabin",
    "cactus", "camera", "candle", "canoe", "canyon", "carpet", "carrot",
    "castle", "cathedral", "cedar", "cellar", "chalk", "channel", "cherry",
    "chimney", "cinnamon", "circus", "cliff", "clock", "cloud", "clover",
    "cobalt", "cobweb", "coconut", "comet", "compass", "copper", "coral",
    "cottage", "cradle", "crater", "crayon", "cricket", "crystal", "cupboard",
    "curtain", "cushion", "dagger", "daisy", "desert", "diamond", "dolphin",
    "dragon", "drum", "dune", "eagle", "easel", "echo", "elbow", "ember",
    "engine", "falcon", "feather", "fence", "fern", "ferry", "fiddle",
    "firefly", "fjord", "flame", "flannel", "flute", "forest", "fossil",
    "fountain", "fox", "galaxy", "garden", "garlic", "garnet", "gazebo",
    "glacier", "glove", "goblet", "granite", "grape", "gravel", "guitar",
    "hammer", "harbor", "harp", "harvest", "hazel", "hedgehog", "helmet",
    "hermit", "hill", "honey", "horizon", "iceberg", "igloo", "island", "ivory",
    "jacket", "jaguar", "jasmine", "jelly", "jester", "jewel", "jigsaw",
    "journal", "jungle", "kayak", "kettle", "kingdom", "kite", "kitten",
    "ladder", "lagoon", "lantern", "lava", "lemon", "lemonade", "library",
    "lighthouse", "lily", "lizard", "lobster", "locket", "lotus", "magnet",
    "mango", "maple", "marble", "marigold", "meadow", "mellon", "melody",
    "meteor", "mirror", "mitten", "monsoon", "mosaic", "mountain", "muffin",
    "mushroom", "napkin", "nectar", "needle", "nest", "nutmeg", "oasis",
    "ocean", "olive", "onion", "orchard", "orchid", "otter", "owl", "paddle",
    "palace", "panther", "papaya", "parrot", "pebble", "pelican", "pencil",
    "pepper", "piano", "pigeon", "pillow", "pine", "planet", "plum", "pocket",
    "pond", "poppy", "potato", "prism", "pumpkin", "puzzle", "quarry", "quartz",
    "quill", "rabbit", "raccoon", "radish", "rainbow", "raven", "reef",
    "ribbon", "river", "robin", "rocket", "saddle", "saffron", "sailor",
    "salmon", "sapphire", "satchel", "scarecrow", "scroll", "seashell",
    "shadow", "shelter", "shovel", "silver", "skylark", "sledge", "snowflake",
    "spider", "spindle", "sponge", "spruce", "squirrel", "stable", "starfish",
    "statue", "storm", "sunflower", "swallow", "sword", "tablet", "teapot",
    "temple", "thimble", "thistle", "thunder", "tiger", "timber", "toffee",
    "tortoise", "tower", "trumpet", "tulip", "tunnel", "turnip", "umbrella",
    "valley", "velvet", "violin", "volcano", "waffle", "wagon", "walnut",
    "walrus", "wardrobe", "waterfall", "whisker", "whistle", "willow", "window",
    "winter", "wizard", "wolf", "zebra", "zephyr",
  };
  return kWords;
}

}  // namespace arena
