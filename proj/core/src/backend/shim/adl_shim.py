"""Scripting access to ADL reflection manifests and ADD1 payloads.

Load a manifest to create and edit dynamic instances, or read a payload
using only the schema embedded in its header:

    reg = load_manifest("reflection.manifest.json")
    track = reg.create("Evt::Track")
    track.pt = 3.5

    objects = read_payload("event.add")
    sys.stdout.buffer.write(dump(objects))
"""

import json
import math
import struct
import sys

MANIFEST_FORMAT = "adl-reflection-manifest"
MANIFEST_VERSION = 1
MAGIC = b"ADD1"
PAYLOAD_VERSION = 1
NO_LINK = 0xFFFFFFFF
MAX_COUNT = 1 << 26
MAX_DEPTH = 64

PRIMITIVES = ("boolean", "octet", "short", "long", "long long", "float", "double", "string")
TAGS = PRIMITIVES + ("sequence", "enum", "value", "extern")
_RANGES = {
    "octet": (0, 0xFF),
    "short": (-(1 << 15), (1 << 15) - 1),
    "long": (-(1 << 31), (1 << 31) - 1),
    "long long": (-(1 << 63), (1 << 63) - 1),
}


class ShimError(Exception):
    pass


class ManifestError(ShimError):
    pass


class PayloadError(ShimError):
    pass


class TypeMismatch(ShimError, TypeError):
    pass


class Type:
    """A resolved attribute type. `kind` is a primitive name or one of
    sequence, enum, value, extern."""

    __slots__ = ("kind", "name", "element", "enumerators", "fields")

    def __init__(self, kind, name="", element=None, enumerators=(), fields=()):
        self.kind = kind
        self.name = name
        self.element = element
        self.enumerators = tuple(enumerators)
        self.fields = tuple(fields)

    def spelling(self):
        if self.kind == "sequence":
            return "sequence<%s>" % self.element.spelling()
        return self.name or self.kind

    def zero(self):
        if self.kind == "boolean":
            return False
        if self.kind in ("float", "double"):
            return 0.0
        if self.kind in _RANGES:
            return 0
        if self.kind == "string":
            return ""
        if self.kind == "sequence":
            return []
        if self.kind == "enum":
            return self.enumerators[0]
        if self.kind == "value":
            return Struct(self)
        return b""

    def accepts(self, v):
        k = self.kind
        if k == "boolean":
            return isinstance(v, bool)
        if k in _RANGES:
            lo, hi = _RANGES[k]
            return isinstance(v, int) and not isinstance(v, bool) and lo <= v <= hi
        if k in ("float", "double"):
            return isinstance(v, float)
        if k == "string":
            return isinstance(v, str)
        if k == "sequence":
            return isinstance(v, list) and all(self.element.accepts(e) for e in v)
        if k == "enum":
            return isinstance(v, str) and v in self.enumerators
        if k == "value":
            return isinstance(v, Struct) and v.type.name == self.name
        return isinstance(v, (bytes, bytearray))


class Field:
    __slots__ = ("name", "type", "persistent", "private")

    def __init__(self, name, type_, persistent, private):
        self.name = name
        self.type = type_
        self.persistent = persistent
        self.private = private


class Struct:
    """Nested plain-class value."""

    def __init__(self, type_):
        object.__setattr__(self, "type", type_)
        object.__setattr__(self, "values", {f.name: f.type.zero() for f in type_.fields})

    def __getattr__(self, name):
        try:
            return self.values[name]
        except KeyError:
            raise AttributeError(name) from None

    def __setattr__(self, name, value):
        _assign(self.type.fields, self.values, name, value, self.type.name)

    def __eq__(self, other):
        return isinstance(other, Struct) and self.type.name == other.type.name and self.values == other.values


def _assign(fields, values, name, value, owner):
    for f in fields:
        if f.name == name:
            if not f.type.accepts(value):
                raise TypeMismatch("%s.%s holds %s" % (owner, name, f.type.spelling()))
            values[name] = value
            return
    raise AttributeError("%s has no field %r" % (owner, name))


class ShimClass:
    def __init__(self, name, class_id, category, bases, linearization, attributes, links):
        self.name = name
        self.classId = class_id
        self.category = category
        self.bases = tuple(bases)
        self.linearization = tuple(linearization)
        self.attributes = tuple(attributes)  # own attributes, manifest order
        self.fields = ()  # every attribute, linearized
        self.links = tuple(links)  # (name, many, target, inverse)

    def is_kind_of(self, name):
        return name in self.linearization


class ShimObject:
    """A dynamic instance: attribute access by name, type checked."""

    def __init__(self, cls, key=""):
        object.__setattr__(self, "cls", cls)
        object.__setattr__(self, "key", key)
        object.__setattr__(self, "values", {f.name: f.type.zero() for f in cls.fields})
        object.__setattr__(self, "links", {l[0]: ([] if l[1] else None) for l in cls.links})

    def __getattr__(self, name):
        try:
            return self.values[name]
        except KeyError:
            raise AttributeError(name) from None

    def __setattr__(self, name, value):
        _assign(self.cls.fields, self.values, name, value, self.cls.name)

    def get(self, path):
        parts = path.split(".")
        v = self.values[parts[0]] if parts[0] in self.values else getattr(self, parts[0])
        for p in parts[1:]:
            v = getattr(v, p)
        return v

    def set(self, path, value):
        parts = path.split(".")
        target = self
        for p in parts[:-1]:
            target = getattr(target, p)
        setattr(target, parts[-1], value)


class Registry:
    def __init__(self, classes, schema_version):
        self.schemaVersion = schema_version
        self.classes = classes  # name -> ShimClass, manifest order
        self.by_id = {c.classId: c for c in classes.values()}

    def __len__(self):
        return len(self.classes)

    def find(self, key):
        if isinstance(key, int):
            return self.by_id.get(key)
        return self.classes.get(key)

    def create(self, name):
        cls = self.classes.get(name)
        if cls is None:
            raise ShimError("unknown class %r" % name)
        if cls.category == "extern":
            raise ShimError("opaque type not instantiable: %s" % name)
        return ShimObject(cls)


# ---------------------------------------------------------------------------
# manifests


def _need(obj, key, kind):
    if not isinstance(obj, dict) or key not in obj:
        raise ManifestError("missing %r" % key)
    v = obj[key]
    if kind is int:
        ok = isinstance(v, int) and not isinstance(v, bool)
    else:
        ok = isinstance(v, kind)
    if not ok:
        raise ManifestError("%r has the wrong type" % key)
    return v


def load_manifest(source):
    """`source` is a path, bytes, or an already parsed document."""
    if isinstance(source, (bytes, bytearray)):
        text = bytes(source).decode("utf-8", "strict")
    elif isinstance(source, dict):
        text = None
        doc = source
    else:
        with open(source, "rb") as fh:
            text = fh.read().decode("utf-8", "strict")
    if text is not None:
        try:
            doc = json.loads(text)
        except ValueError as exc:
            raise ManifestError("not JSON: %s" % exc) from None
    if _need(doc, "format", str) != MANIFEST_FORMAT:
        raise ManifestError("unexpected format tag")
    version = _need(doc, "schemaVersion", int)
    if version != MANIFEST_VERSION:
        raise ManifestError("unsupported schemaVersion %d" % version)

    raw = {}
    for c in _need(doc, "classes", list):
        raw[_need(c, "name", str)] = c
    enums = {}
    for e in _need(doc, "enums", list):
        enums[_need(e, "name", str)] = tuple(_need(e, "enumerators", list))

    def make_type(t, depth=0):
        if depth > MAX_DEPTH:
            raise ManifestError("type nested too deeply")
        kind = _need(t, "kind", str)
        if kind == "primitive":
            name = _need(t, "name", str)
            if name not in PRIMITIVES:
                raise ManifestError("unknown primitive %r" % name)
            return Type(name)
        if kind == "sequence":
            return Type("sequence", element=make_type(_need(t, "element", dict), depth + 1))
        name = _need(t, "name", str)
        if kind == "enum":
            if name not in enums:
                raise ManifestError("unknown enum %r" % name)
            return Type("enum", name, enumerators=enums[name])
        if kind == "value":
            return Type("value", name, fields=fields_of(name, depth + 1))
        if kind == "extern":
            return Type("extern", name)
        raise ManifestError("attribute of kind %r" % kind)

    def fields_of(name, depth):
        if name not in raw:
            raise ManifestError("unknown class %r" % name)
        out = []
        for k in _need(raw[name], "linearization", list):
            if k not in raw:
                raise ManifestError("unknown class %r" % k)
            for a in _need(raw[k], "attributes", list):
                out.append(Field(_need(a, "name", str), make_type(_need(a, "type", dict), depth),
                                 _need(a, "persistent", bool), _need(a, "visibility", str) == "private"))
        return out

    classes = {}
    for name, c in raw.items():
        cls = ShimClass(name, _need(c, "classId", int), _need(c, "category", str),
                        _need(c, "bases", list), _need(c, "linearization", list),
                        [], [])
        cls.fields = tuple(fields_of(name, 0))
        own = {a["name"] for a in _need(c, "attributes", list)}
        cls.attributes = tuple(f for f in cls.fields if f.name in own)
        links = []
        for k in cls.linearization:
            for r in _need(raw[k], "relationships", list):
                links.append((_need(r, "name", str), _need(r, "cardinality", str) == "many",
                              _need(r, "target", str), _need(r, "inverse", str)))
        cls.links = tuple(links)
        if cls.classId in (x.classId for x in classes.values()):
            raise ManifestError("duplicate classId 0x%08x" % cls.classId)
        classes[name] = cls
    return Registry(classes, version)


# ---------------------------------------------------------------------------
# payloads


class _Reader:
    def __init__(self, data, truncation="truncated object table"):
        self.data = data
        self.pos = 0
        self.truncation = truncation

    def take(self, n):
        if len(self.data) - self.pos < n:
            raise PayloadError(self.truncation)
        out = self.data[self.pos:self.pos + n]
        self.pos += n
        return out

    def unpack(self, fmt, size):
        return struct.unpack(fmt, self.take(size))[0]

    def u8(self):
        return self.unpack("<B", 1)

    def u16(self):
        return self.unpack("<H", 2)

    def u32(self):
        return self.unpack("<I", 4)

    def count(self, min_size=1):
        n = self.u32()
        if n > MAX_COUNT:
            raise PayloadError("count exceeds format limit")
        if min_size and n > (len(self.data) - self.pos) // min_size:
            raise PayloadError(self.truncation)
        return n

    def bytes_(self):
        return bytes(self.take(self.count(1)))

    def str_(self):
        return self.bytes_().decode("utf-8", "surrogateescape")

    def at_end(self):
        return self.pos == len(self.data)


_WIRE_TAGS = {0: "boolean", 1: "octet", 2: "short", 3: "long", 4: "long long", 5: "float",
              6: "double", 7: "string", 8: "sequence", 9: "enum", 10: "value", 11: "extern"}
_FIXED = {"boolean": ("<B", 1), "octet": ("<B", 1), "short": ("<h", 2), "long": ("<i", 4),
          "long long": ("<q", 8), "float": ("<f", 4), "double": ("<d", 8)}


def _read_type(r, depth=0):
    if depth > MAX_DEPTH:
        raise PayloadError("type descriptor nested too deeply")
    tag = r.u8()
    if tag not in _WIRE_TAGS:
        raise PayloadError("unknown type tag")
    kind = _WIRE_TAGS[tag]
    if kind == "sequence":
        return Type(kind, element=_read_type(r, depth + 1))
    if kind == "enum":
        name = r.str_()
        n = r.count(4)
        if n == 0:
            raise PayloadError("enumeration without enumerators")
        return Type(kind, name, enumerators=[r.str_() for _ in range(n)])
    if kind == "value":
        name = r.str_()
        n = r.count(6)
        return Type(kind, name, fields=[_read_field(r, depth + 1) for _ in range(n)])
    if kind == "extern":
        return Type(kind, r.str_())
    return Type(kind)


def _read_field(r, depth):
    name = r.str_()
    flags = r.u8()
    if flags & ~3:
        raise PayloadError("unknown field flags")
    return Field(name, _read_type(r, depth), bool(flags & 1), bool(flags & 2))


_CATEGORIES = ("plain", "DataObject", "ContainedObject", "CollectionObject", "extern")


def _read_class(r):
    class_id = r.u32()
    name = r.str_()
    cat = r.u8()
    if cat >= len(_CATEGORIES):
        raise PayloadError("unknown class category")
    ancestors = [r.str_() for _ in range(r.count(4))]
    fields = [_read_field(r, 0) for _ in range(r.count(6))]
    links = []
    for _ in range(r.count(13)):
        lname = r.str_()
        many = r.u8()
        if many > 1:
            raise PayloadError("unknown link cardinality")
        links.append((lname, many == 1, r.str_(), r.str_()))
    cls = ShimClass(name, class_id, _CATEGORIES[cat], [], ancestors + [name], [], links)
    cls.fields = tuple(fields)
    return cls


def _min_size(t):
    if t.kind in _FIXED:
        return _FIXED[t.kind][1]
    if t.kind == "value":
        return sum(_min_size(f.type) for f in t.fields)
    return 4


def _read_value(r, t):
    if t.kind in _FIXED:
        fmt, size = _FIXED[t.kind]
        v = r.unpack(fmt, size)
        if t.kind == "boolean":
            if v > 1:
                raise PayloadError("boolean byte out of range")
            return v == 1
        return v
    if t.kind == "string":
        return r.str_()
    if t.kind == "sequence":
        n = r.count(max(1, _min_size(t.element)))
        return [_read_value(r, t.element) for _ in range(n)]
    if t.kind == "enum":
        ordinal = r.u32()
        if ordinal >= len(t.enumerators):
            raise PayloadError("enumerator ordinal out of range")
        return t.enumerators[ordinal]
    if t.kind == "value":
        s = Struct(t)
        for f in t.fields:
            s.values[f.name] = _read_value(r, f.type)
        return s
    return r.bytes_()


def read_payload(source):
    """Objects of a payload, in object-table order. `source` is a path or bytes."""
    if isinstance(source, (bytes, bytearray, memoryview)):
        data = bytes(source)
    else:
        with open(source, "rb") as fh:
            data = fh.read()
    if data[:4] != MAGIC[:len(data[:4])]:
        raise PayloadError("bad magic: not an ADD1 payload")
    r = _Reader(data, "truncated header")
    r.take(4)
    version = r.u16()
    if version != PAYLOAD_VERSION:
        raise PayloadError("unsupported payload version %d" % version)
    if r.u16() != 0:
        raise PayloadError("unknown payload flags")
    schemas = {}
    for _ in range(r.count(10)):
        cls = _read_class(r)
        if cls.classId in schemas:
            raise PayloadError("duplicate classId in header")
        schemas[cls.classId] = cls
    n = r.count(12)
    r.truncation = "truncated object table"
    records = []
    for _ in range(n):
        class_id = r.u32()
        if class_id not in schemas:
            raise PayloadError("object refers to a class absent from the header")
        key = r.str_()
        body = r.take(r.count(1))
        records.append((schemas[class_id], key, body))
    if not r.at_end():
        raise PayloadError("trailing bytes after object table")

    objects = [ShimObject(cls, key) for cls, key, _ in records]
    seen = set()
    for obj in objects:
        if not obj.key or obj.key in seen:
            raise PayloadError("duplicate or empty object key %r" % obj.key)
        seen.add(obj.key)
    for obj, (cls, _, body) in zip(objects, records):
        br = _Reader(body)
        for f in cls.fields:
            if f.persistent:
                obj.values[f.name] = _read_value(br, f.type)

        def target(idx, link):
            if idx >= len(objects):
                raise PayloadError("link index out of range")
            if not objects[idx].cls.is_kind_of(link[2]):
                raise PayloadError("link %s points at a %s" % (link[0], objects[idx].cls.name))
            return objects[idx].key

        for link in cls.links:
            if link[1]:
                obj.links[link[0]] = [target(br.u32(), link) for _ in range(br.count(4))]
            else:
                idx = br.u32()
                obj.links[link[0]] = None if idx == NO_LINK else target(idx, link)
        if not br.at_end():
            raise PayloadError("object body has trailing bytes")
    return objects


# ---------------------------------------------------------------------------
# canonical dump


def _quote(s):
    raw = s.encode("utf-8", "surrogateescape") if isinstance(s, str) else s
    out = bytearray(b'"')
    for c in raw:
        if c in (0x22, 0x5C):
            out += b"\\" + bytes([c])
        elif c < 0x20 or c == 0x7F:
            out += b"\\x%02x" % c
        else:
            out.append(c)
    out += b'"'
    return bytes(out)


def _real(v, digits):
    if math.isnan(v):
        return b"nan"
    if math.isinf(v):
        return b"inf" if v > 0 else b"-inf"
    return ("%.*g" % (digits, v)).encode()


def _render(v, t):
    k = t.kind
    if k == "boolean":
        return b"true" if v else b"false"
    if k in _RANGES:
        return str(v).encode()
    if k == "float":
        return _real(v, 9)
    if k == "double":
        return _real(v, 17)
    if k == "string":
        return _quote(v)
    if k == "sequence":
        return b"[" + b", ".join(_render(e, t.element) for e in v) + b"]"
    if k == "enum":
        return v.encode()
    if k == "value":
        return b"{" + b", ".join(f.name.encode() + b"=" + _render(v.values[f.name], f.type)
                                 for f in t.fields) + b"}"
    return b'x"' + bytes(v).hex().encode() + b'"'


def dump(objects):
    """One `Class.key.field=value` line per field and link, sorted bytewise."""
    lines = []
    for obj in objects:
        prefix = obj.cls.name.encode() + b"." + obj.key.encode("utf-8", "surrogateescape") + b"."
        for f in obj.cls.fields:
            lines.append(prefix + f.name.encode() + b"=" + _render(obj.values[f.name], f.type))
        for name, many, _, _ in obj.cls.links:
            v = obj.links[name]
            if many:
                rendered = b"[" + b", ".join(_quote(k) for k in v) + b"]"
            else:
                rendered = b"null" if v is None else _quote(v)
            lines.append(prefix + name.encode() + b"=@" + rendered)
    lines.sort()
    return b"".join(l + b"\n" for l in lines)


def main(argv):
    if len(argv) != 3 or argv[1] not in ("dump", "classes"):
        sys.stderr.write("usage: adl_shim.py dump PAYLOAD | classes MANIFEST\n")
        return 2
    try:
        if argv[1] == "dump":
            sys.stdout.buffer.write(dump(read_payload(argv[2])))
        else:
            for cls in load_manifest(argv[2]).classes.values():
                sys.stdout.write("%s 0x%08x %s\n" % (cls.name, cls.classId, cls.category))
    except (ShimError, OSError, UnicodeDecodeError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
