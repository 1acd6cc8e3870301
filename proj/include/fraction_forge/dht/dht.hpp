#ifndef FRACTION_FORGE_DHT_DHT_HPP
#define FRACTION_FORGE_DHT_DHT_HPP

#include "fraction_forge/dht/a1.hpp"
#include "fraction_forge/dht/cube.hpp"
#include "fraction_forge/dht/graph.hpp"
#include "fraction_forge/dht/graph_io.hpp"
#include "fraction_forge/dht/lazy.hpp"

#endif
