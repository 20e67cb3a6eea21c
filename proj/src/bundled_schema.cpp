#include "rwtc/schema.hpp"

namespace rwtc {

namespace {

// The embedded manifest goes through the ordinary loader so it is validated
// exactly like a user-supplied one.
constexpr const char* kBundledManifest = R"MANIFEST(
# name|subsystem|tipe|property|unit|interp|advice|default|variants|sentinels|required
[fields]
io.file.buffer.size|core|pos|value mod env.hw_page_size == 0|bytes|Read and write buffer size used by sequence files and streams|Use a multiple of the hardware page size|4096|4096,8192,16384,65536,131072||false
io.map.index.interval|core|pos||entries|An index entry is written once per this many map file entries|Larger intervals shrink the index at the cost of extra seeks|128|||false
io.map.index.skip|core|nonneg||entries|Index entries skipped between reads when a map file index loads|Raise to trade lookup precision for memory|0|||false
io.seqfile.compress.blocksize|core|pos||bytes|Minimum block size for sequence-file block compression|Larger blocks compress better but buffer more|1000000|||false
io.seqfile.sorter.recordlimit|core|pos||records|Records held in memory per sequence-file sort spill|Raise only with ample heap|1000000|||false
ipc.maximum.data.length|core|pos||bytes|Largest IPC message the server accepts|Raise only for very large block reports|67108864|||false
dfs.blocksize|hdfs|pos|value mod 512 == 0|bytes|File system block size for new files|Keep it a multiple of the 512-byte checksum chunk|134217728|67108864,134217728,268435456||false
dfs.namenode.handler.count|hdfs|pos|value <= env.max_threads|threads|RPC handler threads in the namenode|Twenty times the log of the cluster size works well|10|||false
mapreduce.input.fileinputformat.split.minsize|mapred|nonneg||bytes|Lower bound on the input split size|Zero lets the block size drive the split|0|0,1048576,16777216||false
mapreduce.input.fileinputformat.split.maxsize|mapred|pos||bytes|Upper bound on the input split size|Must stay above the minimum split size|268435456|134217728,268435456,536870912||false
mapreduce.jobtracker.maxtasks.perjob|mapred|optpos||tasks|Ceiling on tasks in a single job; the sentinel means unlimited|Set a bound on shared clusters|-1|-1,0,1,2,3,4|-1|false
mapreduce.job.ubertask.enable|mapred|bool||flag|Runs sufficiently small jobs inside the application master JVM|Worth enabling for many tiny jobs|false|true,false||false
mapreduce.map.memory.mb|mapred|pos|value <= env.phys_mem_mb|mb|Memory requested per map task container|Size to the working set, not the maximum|1024|512,1024||false
mapreduce.reduce.memory.mb|mapred|pos|value <= env.phys_mem_mb|mb|Memory requested per reduce task container|Reducers usually need more than maps|1024|512,1024||false
mapreduce.map.cpu.vcores|mapred|pos|value <= env.virt_cpu_cores|vcores|Virtual cores requested per map task|One core suffices for IO-bound maps|1|1,2||false
mapreduce.reduce.cpu.vcores|mapred|pos|value <= env.virt_cpu_cores|vcores|Virtual cores requested per reduce task|Match the merge parallelism|1|1,2||false
mapreduce.map.java.opts|mapred|javaopts||jvm-flags|JVM options for map task processes; initial and maximum heap are mandatory|Keep the maximum heap under the container size|-Xms512m -Xmx1024m|-Xms512m -Xmx1024m,-Xms1024m -Xmx4096m,-Xms1g -Xmx2g||false
mapreduce.map.output.compress|mapred|bool||flag|Compresses intermediate map output|Enable when the network is the bottleneck|false|true,false||false
mapreduce.map.output.compress.codec|mapred|str|value in env.comp_codecs|class|Codec class used for map output compression|Prefer a fast codec for intermediate data|org.apache.hadoop.io.compress.DefaultCodec|org.apache.hadoop.io.compress.DefaultCodec,org.apache.hadoop.io.compress.GzipCodec,org.apache.hadoop.io.compress.SnappyCodec,org.apache.hadoop.io.compress.Lz4Codec||false
mapreduce.job.reduce.slowstart.completedmaps|mapred|float||fraction|Fraction of maps that must finish before reducers start|Late starts free resources for map-heavy jobs|0.05|0.05,0.5,0.8,0.95||false
mapreduce.job.running.map.limit|mapred|int||tasks|Simultaneous map task cap; zero or below means no limit|Limit only to protect shared stores|0|-1,0,5,20||false
yarn.app.mapreduce.am.resource.mb|yarn|pos|value <= env.phys_mem_mb|mb|Memory for the MapReduce application master container|Leave headroom above task containers|1536|1536,2048,3072||false
yarn.app.mapreduce.am.resource.cpu-vcores|yarn|pos|value <= env.virt_cpu_cores|vcores|Virtual cores for the application master|Raise together with uber mode|1|1,2,4,8||false
yarn.nodemanager.container-manager.thread-count|yarn|pos|value <= env.max_threads|threads|Threads serving container management requests|Bounded by the platform thread limit|20|||false
yarn.sharedcache.admin.thread-count|yarn|pos|value <= env.max_threads|threads|Threads serving shared-cache admin requests|One is usually enough|1|||false
[cross]
maxsplit_gt_minsplit|field(mapreduce.input.fileinputformat.split.maxsize) > field(mapreduce.input.fileinputformat.split.minsize)|The split upper bound must exceed the lower bound
uber_map_mem|field(mapreduce.job.ubertask.enable) implies field(mapreduce.map.memory.mb) < field(yarn.app.mapreduce.am.resource.mb)|Uber jobs run inside the application master, so map memory must fit under it
uber_reduce_mem|field(mapreduce.job.ubertask.enable) implies field(mapreduce.reduce.memory.mb) < field(yarn.app.mapreduce.am.resource.mb)|Uber jobs run inside the application master, so reduce memory must fit under it
uber_map_cpu|field(mapreduce.job.ubertask.enable) implies field(mapreduce.map.cpu.vcores) < field(yarn.app.mapreduce.am.resource.cpu-vcores)|Uber jobs run inside the application master, so map cores must fit under it
uber_reduce_cpu|field(mapreduce.job.ubertask.enable) implies field(mapreduce.reduce.cpu.vcores) < field(yarn.app.mapreduce.am.resource.cpu-vcores)|Uber jobs run inside the application master, so reduce cores must fit under it
)MANIFEST";

}  // namespace

const ConfigSchema& bundled_hadoop_schema() {
    static const ConfigSchema schema = parse_schema_manifest(kBundledManifest, "hadoop",
                                                             "<bundled>");
    return schema;
}

}  // namespace rwtc
